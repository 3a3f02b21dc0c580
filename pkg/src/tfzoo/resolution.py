"""CNF search problems, decision trees, and tree-like resolution proofs.

Conversions go both ways: a decision tree solving the falsified-clause
search problem relabels into a tree refutation, and a tree refutation walks
back into a solving tree.  Randomized variants carry an auxiliary CNF B (the
negations of the give-up paths) and exact per-assignment probabilities:
distributions are explicit weighted lists over structures, never samplers.

Assignments are bitmask ints (bit v-1 = value of variable v); literals are
DIMACS-style signed ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .oracle import FiniteFunction, QueryLedger, evaluate, make_table_fn
from .problems import Solution
from .problems.instances import InstanceError
from .problems.verify import _EXTRA_ENUMERATORS, _VERIFIERS  # registration hooks


class ResolutionError(Exception):
    pass


# ---------------------------------------------------------------------------
# clauses and CNFs


@dataclass(frozen=True)
class CNF:
    nvars: int
    clauses: tuple[frozenset[int], ...]

    def __post_init__(self):
        for i, c in enumerate(self.clauses):
            for lit in c:
                if lit == 0 or abs(lit) > self.nvars:
                    raise ResolutionError(f"clause {i + 1}: literal {lit} out of range")
                if -lit in c:
                    raise ResolutionError(f"clause {i + 1} contains {lit} and {-lit}")

    @property
    def width(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    def clause_satisfied(self, i: int, x: int) -> bool:
        return clause_satisfied(self.clauses[i - 1], x)

    def satisfied(self, x: int) -> bool:
        return all(clause_satisfied(c, x) for c in self.clauses)

    def falsified_clauses(self, x: int) -> list[int]:
        return [
            i + 1 for i, c in enumerate(self.clauses) if not clause_satisfied(c, x)
        ]

    def is_unsat(self) -> bool:
        return all(self.falsified_clauses(x) for x in range(1 << self.nvars))


def clause_satisfied(clause: frozenset[int], x: int) -> bool:
    for lit in clause:
        bit = (x >> (abs(lit) - 1)) & 1
        if bit == (1 if lit > 0 else 0):
            return True
    return False


def parse_dimacs(text: str) -> CNF:
    nvars = 0
    clauses: list[frozenset[int]] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith(("c", "%")):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) < 4 or parts[1] != "cnf":
                raise ResolutionError(f"bad problem line: {line!r}")
            nvars = int(parts[2])
            continue
        lits = [int(t) for t in line.split()]
        if lits and lits[-1] == 0:
            lits = lits[:-1]
        if lits:
            clauses.append(frozenset(lits))
    return CNF(nvars, tuple(clauses))


def to_dimacs(cnf: CNF) -> str:
    lines = [f"p cnf {cnf.nvars} {len(cnf.clauses)}"]
    for c in cnf.clauses:
        lines.append(" ".join(str(lit) for lit in sorted(c, key=abs)) + " 0")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# the assignment-oracle search problem


@dataclass(frozen=True)
class SearchCNFInstance:
    """Find a falsified clause of `cnf` under the assignment bit oracle."""

    cnf: CNF
    x: FiniteFunction  # [nvars] -> [2]: value v+1 encodes bit v

    problem_name = "search_cnf"

    def __post_init__(self):
        if self.x.domain_size != self.cnf.nvars or self.x.codomain_size != 2:
            raise InstanceError("assignment oracle shape mismatch")

    def bit(self, var: int, ledger: QueryLedger) -> int:
        return evaluate(self.x, var, ledger) - 1


def search_of_cnf(cnf: CNF, assignment: int) -> SearchCNFInstance:
    bits = [((assignment >> v) & 1) + 1 for v in range(cnf.nvars)]
    return SearchCNFInstance(cnf, make_table_fn(bits, cnf.nvars, 2, name="x"))


def _verify_search_cnf(inst: SearchCNFInstance, sol: Solution, led: QueryLedger) -> bool:
    if sol.variant != "s1":
        raise InstanceError(f"search_cnf variant {sol.variant!r}")
    (i,) = sol.witness
    if not 1 <= i <= len(inst.cnf.clauses):
        return False
    for lit in inst.cnf.clauses[i - 1]:
        if inst.bit(abs(lit), led) == (1 if lit > 0 else 0):
            return False
    return True


def _enumerate_search_cnf(inst: SearchCNFInstance):
    for i in range(1, len(inst.cnf.clauses) + 1):
        yield Solution("search_cnf", "s1", (i,))


_VERIFIERS[SearchCNFInstance] = _verify_search_cnf
_EXTRA_ENUMERATORS[SearchCNFInstance] = _enumerate_search_cnf


# ---------------------------------------------------------------------------
# decision trees


@dataclass(frozen=True)
class DTLeaf:
    label: Optional[int]  # clause index, or None for bot


@dataclass(frozen=True)
class DTNode:
    var: int
    low: "DecisionTree"
    high: "DecisionTree"


DecisionTree = Union[DTLeaf, DTNode]


def tree_depth(t: DecisionTree) -> int:
    if isinstance(t, DTLeaf):
        return 0
    return 1 + max(tree_depth(t.low), tree_depth(t.high))


def tree_eval(t: DecisionTree, x: int) -> Optional[int]:
    while isinstance(t, DTNode):
        t = t.high if (x >> (t.var - 1)) & 1 else t.low
    return t.label


def check_no_repeats(t: DecisionTree, seen: frozenset[int] = frozenset()) -> None:
    if isinstance(t, DTLeaf):
        return
    if t.var in seen:
        raise ResolutionError(f"variable {t.var} queried twice on a path")
    s = seen | {t.var}
    check_no_repeats(t.low, s)
    check_no_repeats(t.high, s)


def restrict_tree(t: DecisionTree, path: dict[int, int]) -> DecisionTree:
    """Simplify a tree under a partial assignment: queries of assigned
    variables collapse to the forced branch."""
    if isinstance(t, DTLeaf):
        return t
    if t.var in path:
        return restrict_tree(t.high if path[t.var] else t.low, path)
    return DTNode(
        t.var,
        restrict_tree(t.low, {**path, t.var: 0}),
        restrict_tree(t.high, {**path, t.var: 1}),
    )


def graft_at_bots(base: DecisionTree, follow_up: DecisionTree) -> DecisionTree:
    """Replace every give-up leaf by the follow-up tree simplified under the
    leaf's path, preserving the repeat-free invariant."""

    def rec(t: DecisionTree, path: dict[int, int]) -> DecisionTree:
        if isinstance(t, DTLeaf):
            return restrict_tree(follow_up, path) if t.label is None else t
        return DTNode(
            t.var, rec(t.low, {**path, t.var: 0}), rec(t.high, {**path, t.var: 1})
        )

    return rec(base, {})


def build_solving_tree(cnf: CNF) -> DecisionTree:
    """Canonical tree solving the falsified-clause search problem of an
    unsatisfiable CNF: query the first unassigned variable of the first
    not-yet-decided clause."""

    def rec(assign: dict[int, int]) -> DecisionTree:
        for i, c in enumerate(cnf.clauses):
            decided_true = any(
                assign.get(abs(lit)) == (1 if lit > 0 else 0) for lit in c
            )
            if decided_true:
                continue
            free = [abs(lit) for lit in sorted(c, key=abs) if abs(lit) not in assign]
            if not free:
                return DTLeaf(i + 1)
            v = free[0]
            return DTNode(
                v, rec({**assign, v: 0}), rec({**assign, v: 1})
            )
        raise ResolutionError("CNF is satisfiable: no falsified clause to find")

    return rec({})


# ---------------------------------------------------------------------------
# tree resolution proofs


@dataclass(frozen=True)
class ProofLeaf:
    clause: frozenset[int]


@dataclass(frozen=True)
class ProofNode:
    pivot: int  # positive pivot variable: left has +pivot, right has -pivot
    left: "TreeResolutionProof"
    right: "TreeResolutionProof"
    clause: frozenset[int]


TreeResolutionProof = Union[ProofLeaf, ProofNode]


@dataclass(frozen=True)
class ProofReport:
    valid: bool
    size: int
    width: int
    reason: str = ""


def proof_size(p: TreeResolutionProof) -> int:
    if isinstance(p, ProofLeaf):
        return 1
    return 1 + proof_size(p.left) + proof_size(p.right)


def proof_width(p: TreeResolutionProof) -> int:
    if isinstance(p, ProofLeaf):
        return len(p.clause)
    return max(len(p.clause), proof_width(p.left), proof_width(p.right))


def verify_tree_resolution(proof: TreeResolutionProof, cnf: CNF) -> ProofReport:
    """Strict resolution only: every internal clause must be exactly the
    resolvent of its children on one pivot; leaves must be input clauses;
    the root must be empty."""

    def rec(p: TreeResolutionProof) -> Optional[str]:
        if isinstance(p, ProofLeaf):
            if p.clause not in cnf.clauses:
                return f"leaf clause {sorted(p.clause)} not in the input CNF"
            return None
        if p.pivot <= 0:
            return f"pivot {p.pivot} must be a positive variable index"
        lc = p.left.clause
        rc = p.right.clause
        if p.pivot not in lc or -p.pivot not in rc:
            return (
                f"premises lack the complementary pivot pair on {p.pivot}: "
                f"{sorted(lc)} / {sorted(rc)}"
            )
        resolvent = (lc - {p.pivot}) | (rc - {-p.pivot})
        if p.clause != resolvent:
            return (
                f"derived clause {sorted(p.clause)} is not the exact resolvent "
                f"{sorted(resolvent)} (weakening is not a rule)"
            )
        return rec(p.left) or rec(p.right)

    reason = rec(proof)
    if reason is None and proof.clause:
        reason = "root clause is not empty"
    return ProofReport(reason is None, proof_size(proof), proof_width(proof), reason or "")


# ---------------------------------------------------------------------------
# decision tree <-> proof


def dt_to_proof(tree: DecisionTree, cnf: CNF) -> TreeResolutionProof:
    """Relabel a solving tree into a refutation: each leaf's clause must be
    falsified along its path; a node resolves its children on the queried
    variable when both resolvent halves mention it, otherwise the child that
    already ignores the variable stands alone."""

    def rec(t: DecisionTree, path: dict[int, int]) -> TreeResolutionProof:
        if isinstance(t, DTLeaf):
            if t.label is None:
                raise ResolutionError("tree has give-up leaves; handle B first")
            clause = cnf.clauses[t.label - 1]
            for lit in clause:
                if path.get(abs(lit)) != (0 if lit > 0 else 1):
                    raise ResolutionError(
                        f"leaf clause {t.label} not falsified along its path"
                    )
            return ProofLeaf(clause)
        low = rec(t.low, {**path, t.var: 0})
        if t.var not in low.clause:
            return low
        high = rec(t.high, {**path, t.var: 1})
        if -t.var not in high.clause:
            return high
        resolvent = (low.clause - {t.var}) | (high.clause - {-t.var})
        return ProofNode(t.var, low, high, resolvent)

    return rec(tree, {})


def proof_to_dt(proof: TreeResolutionProof, cnf: CNF) -> DecisionTree:
    """Walk the refutation top-down, keeping a falsified current clause;
    queries only pivots not already decided on the path, so the depth is at
    most the number of distinct pivots on any proof path."""
    index_of = {}
    for i, c in enumerate(cnf.clauses):
        index_of.setdefault(c, i + 1)

    def rec(p: TreeResolutionProof, path: dict[int, int]) -> DecisionTree:
        while isinstance(p, ProofNode):
            v = p.pivot
            if v in path:
                p = p.right if path[v] else p.left
                continue
            return DTNode(v, rec(p.left, {**path, v: 0}), rec(p.right, {**path, v: 1}))
        if p.clause not in index_of:
            raise ResolutionError("proof leaf clause missing from the CNF")
        return DTLeaf(index_of[p.clause])

    return rec(proof, {})


# ---------------------------------------------------------------------------
# randomized: tree distributions <-> random proofs


@dataclass(frozen=True)
class RandomProof:
    """Explicit distribution over (refutation of F and B, auxiliary CNF B)."""

    members: tuple[tuple[Fraction, TreeResolutionProof, CNF], ...]

    def b_satisfaction(self, x: int) -> Fraction:
        return sum(
            (w for w, _, b in self.members if b.satisfied(x)), start=Fraction(0)
        )


def bot_paths(tree: DecisionTree) -> list[dict[int, int]]:
    out: list[dict[int, int]] = []

    def rec(t: DecisionTree, path: dict[int, int]) -> None:
        if isinstance(t, DTLeaf):
            if t.label is None:
                out.append(path)
            return
        rec(t.low, {**path, t.var: 0})
        rec(t.high, {**path, t.var: 1})

    rec(tree, {})
    return out


def bot_probability(members: Sequence[tuple[Fraction, DecisionTree]], x: int) -> Fraction:
    return sum(
        (w for w, t in members if tree_eval(t, x) is None), start=Fraction(0)
    )


def zppdt_to_randres(
    members: Sequence[tuple[Fraction, DecisionTree]],
    cnf: CNF,
    check_bound: bool = True,
) -> RandomProof:
    """Give-up paths become the auxiliary clauses: B collects the negation of
    every root-to-bot path, the relabeled tree solves the search problem of
    F and B, and the usual relabeling yields the refutation."""
    for _, tree in members:
        check_no_repeats(tree)
    if check_bound and cnf.nvars <= 16:
        for x in range(1 << cnf.nvars):
            p = bot_probability(members, x)
            if p > Fraction(1, 3):
                raise ResolutionError(
                    f"give-up probability {p} > 1/3 at assignment {x:b}"
                )
    out = []
    for w, tree in members:
        b_clauses = []
        for path in bot_paths(tree):
            b_clauses.append(
                frozenset(v if val == 0 else -v for v, val in path.items())
            )
        B = CNF(cnf.nvars, tuple(b_clauses))
        extended = CNF(cnf.nvars, cnf.clauses + B.clauses)
        relabeled = _relabel_bots(tree, cnf, B)
        proof = dt_to_proof(relabeled, extended)
        out.append((w, proof, B))
    return RandomProof(tuple(out))


def _relabel_bots(tree: DecisionTree, cnf: CNF, B: CNF) -> DecisionTree:
    b_index = {c: len(cnf.clauses) + i + 1 for i, c in enumerate(B.clauses)}

    def rec(t: DecisionTree, path: dict[int, int]) -> DecisionTree:
        if isinstance(t, DTLeaf):
            if t.label is not None:
                return t
            clause = frozenset(v if val == 0 else -v for v, val in path.items())
            return DTLeaf(b_index[clause])
        return DTNode(t.var, rec(t.low, {**path, t.var: 0}), rec(t.high, {**path, t.var: 1}))

    return rec(tree, {})


def randres_to_zppdt(
    rp: RandomProof, cnf: CNF, check_bound: bool = True
) -> list[tuple[Fraction, DecisionTree]]:
    """Each member's refutation walks back into a solving tree; leaves landing
    on auxiliary clauses become give-ups."""
    out = []
    for w, proof, B in rp.members:
        extended = CNF(cnf.nvars, cnf.clauses + B.clauses)
        tree = proof_to_dt(proof, extended)
        nf = len(cnf.clauses)

        def relabel(t: DecisionTree) -> DecisionTree:
            if isinstance(t, DTLeaf):
                return DTLeaf(None) if t.label > nf else t
            return DTNode(t.var, relabel(t.low), relabel(t.high))

        out.append((w, relabel(tree)))
    if check_bound and cnf.nvars <= 16:
        for x in range(1 << cnf.nvars):
            p = bot_probability(out, x)
            if p > Fraction(1, 3):
                raise ResolutionError(
                    f"give-up probability {p} > 1/3 at assignment {x:b}"
                )
    return out


# ---------------------------------------------------------------------------
# verifier trees -> totality CNF


def cnf_of_search(trees: Sequence[DecisionTree], nvars: int) -> CNF:
    """The totality CNF: one clause per accepting path of each verifier tree,
    negating the path's literals."""
    clauses: list[frozenset[int]] = []

    def rec(t: DecisionTree, path: dict[int, int]) -> None:
        if isinstance(t, DTLeaf):
            if t.label:  # accepting leaf
                clauses.append(
                    frozenset(-v if val else v for v, val in path.items())
                )
            return
        rec(t.low, {**path, t.var: 0})
        rec(t.high, {**path, t.var: 1})

    for t in trees:
        rec(t, {})
    seen = []
    for c in clauses:
        if c not in seen:
            seen.append(c)
    return CNF(nvars, tuple(seen))


def weak_pigeon_verifier_trees(n: int) -> tuple[list[DecisionTree], int]:
    """Verifier trees for the collision problem on h: [2^n] -> [2^(n-1)],
    presented as (n-1) table bits per pigeon: the tree for a pair (x, y)
    accepts iff all corresponding bits agree."""
    D, bits = 1 << n, n - 1
    nvars = D * bits

    def var(x: int, b: int) -> int:
        return (x - 1) * bits + b + 1

    def equal_tree(x: int, y: int, b: int) -> DecisionTree:
        if b == bits:
            return DTLeaf(1)
        below = equal_tree(x, y, b + 1)
        return DTNode(
            var(x, b),
            DTNode(var(y, b), below, DTLeaf(0)),
            DTNode(var(y, b), DTLeaf(0), below),
        )

    trees = []
    for x in range(1, D + 1):
        for y in range(x + 1, D + 1):
            trees.append(equal_tree(x, y, 0) if bits else DTLeaf(1))
    return trees, nvars


# ---------------------------------------------------------------------------
# serialization (nested JSON trees)


def proof_to_json(p: TreeResolutionProof) -> dict:
    if isinstance(p, ProofLeaf):
        return {"clause": sorted(p.clause)}
    return {
        "pivot": p.pivot,
        "clause": sorted(p.clause),
        "left": proof_to_json(p.left),
        "right": proof_to_json(p.right),
    }


def proof_from_json(obj: dict) -> TreeResolutionProof:
    if "pivot" in obj:
        return ProofNode(
            obj["pivot"],
            proof_from_json(obj["left"]),
            proof_from_json(obj["right"]),
            frozenset(obj["clause"]),
        )
    return ProofLeaf(frozenset(obj["clause"]))

"""Stretch manipulation for compressing pairs.

lossy_stretch turns a pair of stretch M0 = (1+eps)N into one with codomain
target_M over the same N by chaining stages, each built from the source pair:

  * a multiplicative stage applies the product-lifted pair
    [M0*d] -> [N*d] (g on the block coordinate, identity on the rest);
  * an additive stage applies the pair to the top M0 elements only,
    [t] -> [t - (M0-N)], used when rounding would stall the lifted stage
    (only possible for stretches below 2x at small sizes).

A failure of the composed pair pinpoints a failing stage whose block
coordinate is a source solution.  lossy_pad_pow2 composes a stretch to
2^(n+1) with a domain restriction, yielding the exactly power-of-two pair
(2^n, 2^(n+1)) that the layered tree constructions require.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..oracle import QueryLedger, evaluate, make_rule_fn
from ..problems import LossyInstance, Solution
from .base import BackmapError, Reduction


@dataclass(frozen=True)
class _Stage:
    kind: str  # "mult" | "add"
    t_in: int
    t_out: int
    d: int = 1


def _plan_stages(N: int, M0: int, target_M: int) -> list[_Stage]:
    stages = []
    t = target_M
    while t > N:
        d = -(-t // M0)
        if N * d < t:
            stages.append(_Stage("mult", t, N * d, d))
            t = N * d
        else:
            stages.append(_Stage("add", t, t - (M0 - N)))
            t -= M0 - N
    return stages


def stretch_stage_count(N: int, M0: int, target_M: int) -> int:
    return len(_plan_stages(N, M0, target_M))


def lossy_stretch(src: LossyInstance, target_M: int) -> Reduction:
    """Reduce a (1+eps)-stretch pair to one with codomain target_M >= M0.

    Each target evaluation costs one source query per stage; the stage count
    is ceil(log(target_M/N)/log(1+eps)) up to rounding plus an O(1/eps^2)
    small-size tail for sub-doubling stretches.
    """
    N, M0 = src.N, src.M
    if target_M < M0:
        raise ValueError(f"target codomain {target_M} below source codomain {M0}")
    stages = _plan_stages(N, M0, target_M)

    def stage_down(st: _Stage, v: int, ledger: QueryLedger) -> int:
        if st.kind == "mult":
            a, b = (v - 1) // st.d + 1, (v - 1) % st.d + 1
            return (evaluate(src.g, a, ledger) - 1) * st.d + b
        off = st.t_in - M0
        if v <= off:
            return v
        return off + evaluate(src.g, v - off, ledger)

    def stage_up(st: _Stage, v: int, ledger: QueryLedger) -> int:
        if st.kind == "mult":
            c, b = (v - 1) // st.d + 1, (v - 1) % st.d + 1
            out = (evaluate(src.f, c, ledger) - 1) * st.d + b
            return out if out <= st.t_in else 1  # padding slot, never produced by g
        off = st.t_in - M0
        if v <= off:
            return v
        return off + evaluate(src.f, v - off, ledger)

    def stage_block(st: _Stage, v: int) -> int | None:
        """Source point the down map fed to g at this stage, if any."""
        if st.kind == "mult":
            return (v - 1) // st.d + 1
        off = st.t_in - M0
        return v - off if v > off else None

    def down_chain(x: int, ledger: QueryLedger) -> list[int]:
        vs = [x]
        for st in stages:
            vs.append(stage_down(st, vs[-1], ledger))
        return vs

    def g_rule(x: int, ledger: QueryLedger) -> int:
        return down_chain(x, ledger)[-1]

    def f_rule(y: int, ledger: QueryLedger) -> int:
        v = y
        for st in reversed(stages):
            v = stage_up(st, v, ledger)
        return v

    N_t = stages[-1].t_out if stages else target_M
    target = LossyInstance(
        N_t,
        target_M,
        make_rule_fn(f_rule, N_t, target_M, name="f*"),
        make_rule_fn(g_rule, target_M, N_t, name="g*"),
        bijective=False,
    )

    def back(sol: Solution, ledger: QueryLedger) -> Solution:
        (x,) = sol.witness
        vs = down_chain(x, ledger)
        for st, v in zip(stages, vs):
            a = stage_block(st, v)
            if a is not None and evaluate(
                src.f, evaluate(src.g, a, ledger), ledger
            ) != a:
                return Solution("lossy", "s1", (a,))
        raise BackmapError(f"no failing stage under target witness {x}")

    k = max(len(stages), 1)
    return Reduction("lossy_stretch", src, target, back, budget=4 * k)


def lossy_pad_pow2(src: LossyInstance) -> Reduction:
    """Reduce any pair [N]->[2N] to one of shape [2^n] -> [2^(n+1)],
    n = ceil(log2 N), by stretching to 2^(n+1) and then widening the domain:
    inputs above N are junk the compressor never selects, so failures of the
    padded pair are failures of the stretched one."""
    N = src.N
    n = (N - 1).bit_length()
    N2, M2 = 1 << n, 1 << (n + 1)
    inner = lossy_stretch(src, M2)
    it = inner.target

    def f_rule(j: int, ledger: QueryLedger) -> int:
        if j > N:
            return 1
        return evaluate(it.f, j, ledger)

    def g_rule(x: int, ledger: QueryLedger) -> int:
        return evaluate(it.g, x, ledger)

    target = LossyInstance(
        N2,
        M2,
        make_rule_fn(f_rule, N2, M2, name="f2"),
        make_rule_fn(g_rule, M2, N2, name="g2"),
    )

    def back(sol: Solution, ledger: QueryLedger) -> Solution:
        return inner.back(sol, ledger)

    return Reduction("lossy_pad_pow2", src, target, back, budget=inner.budget)

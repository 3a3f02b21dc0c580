"""Reduction plumbing: a lazy target instance plus a solution back-mapper.

The soundness contract every reduction in this package obeys: any solution
accepted by the target's verifier is mapped by `back` (using bounded source
oracle access) to a solution accepted by the source's verifier.  `budget`
bounds the source queries of a single target-oracle evaluation and of a
single back invocation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from ..oracle import QueryLedger
from ..problems import Instance, Solution


class BackmapError(Exception):
    """The case analysis of a back-mapper found no matching source clause.

    Raised instead of guessing; a raise here during tests flags a genuinely
    uncovered case in the construction.
    """


@dataclass
class Reduction:
    rule: str
    source: Instance
    target: Instance
    back: Callable[[Solution, QueryLedger], Solution]
    budget: int

    def back_map(self, sol: Solution, ledger: Optional[QueryLedger] = None) -> Solution:
        if ledger is None:
            ledger = QueryLedger()
        return self.back(sol, ledger)


def chain(r1: Reduction, r2: Reduction) -> Reduction:
    """Compose: r2 must have been built on r1.target."""
    if r2.source is not r1.target:
        raise ValueError(
            f"cannot chain {r1.rule} -> {r2.rule}: intermediate instances differ"
        )

    def back(sol: Solution, ledger: QueryLedger) -> Solution:
        return r1.back(r2.back(sol, ledger), ledger)

    return Reduction(
        rule=f"{r1.rule}|{r2.rule}",
        source=r1.source,
        target=r2.target,
        back=back,
        budget=r1.budget * r2.budget,
    )


def identity_reduction(instance: Instance, rule: str = "identity") -> Reduction:
    return Reduction(rule, instance, instance, lambda sol, led: sol, budget=1)

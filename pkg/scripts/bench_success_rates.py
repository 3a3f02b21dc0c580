#!/usr/bin/env python3
"""Sweep leaf-search tree sizes: exact solution-word fraction vs Monte Carlo.

The exact fraction comes from the bad-walk counting recursion; the estimate
from seeded uniform-word trials.  Both should sit at or above 5/6 on promise
instances, with the estimate inside its 95% interval of the exact value.
"""

import argparse
import math

from tfzoo.problems import gen_instance
from tfzoo.rng import Rng
from tfzoo.solvers import exact_btreeleaf_success, solve_btreeleaf_random


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="*", default=[15, 63, 255, 1023, 4095])
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    ns = ap.parse_args()

    print(f"{'V':>6} {'exact':>10} {'estimate':>10} {'ci95':>19} {'mean_q':>8}")
    for V in ns.sizes:
        inst = gen_instance("btree_leaf", V, mode="structured", seed=ns.seed).instance
        exact = float(exact_btreeleaf_success(inst))
        rng = Rng(ns.seed + V)
        hits = 0
        queries = 0
        for t in range(ns.trials):
            out = solve_btreeleaf_random(inst, rng.split(t))
            hits += out.solved
            queries += out.queries_used
        rate = hits / ns.trials
        hw = 1.96 * math.sqrt(max(rate * (1 - rate), 1e-12) / ns.trials)
        print(
            f"{V:>6} {exact:>10.5f} {rate:>10.5f} "
            f"[{rate - hw:>8.5f},{rate + hw:>8.5f}] {queries / ns.trials:>8.2f}"
        )


if __name__ == "__main__":
    main()

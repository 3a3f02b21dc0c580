#!/usr/bin/env python3
"""Measure worst-case per-evaluation query counts of the depth-sensitive
reductions against their declared bounds."""

import argparse

from tfzoo.oracle import QueryLedger, evaluate
from tfzoo.problems import gen_instance, word_length_for
from tfzoo.reductions import dlo_to_lossy, ec_prime_to_lossy, lossy_stretch


def worst(fn, domain, stride=1):
    w = 0
    for x in range(1, domain + 1, stride):
        led = QueryLedger()
        evaluate(fn, x, led)
        w = max(w, led.total)
    return w


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ns = ap.parse_args()

    print("ec_prime_to_lossy: bound 3(ceil(log V)+1)")
    for V in (4, 8, 16, 32, 64):
        src = gen_instance("empty_child", V, mode="uniform", seed=ns.seed).instance
        red = ec_prime_to_lossy(src)
        k = word_length_for(V)
        w = max(worst(red.target.g, red.target.M), worst(red.target.f, red.target.N))
        print(f"  V={V:>3}: worst {w:>3} bound {3 * k:>3}")

    print("dlo_to_lossy: bound 3 * 4 ceil(log N)")
    for N in (2, 4, 8):
        src = gen_instance("dlo", N, mode="structured", seed=ns.seed).instance
        red = dlo_to_lossy(src)
        ell = 4 * max((N - 1).bit_length(), 1)
        w = max(worst(red.target.g, red.target.M, 17), worst(red.target.f, N))
        print(f"  N={N:>3}: worst {w:>3} bound {3 * ell:>3}")

    print("lossy_stretch: bound 2 ceil(eps^-1 log2(M/N)) + 2")
    import math

    for N, mult in ((4, 4), (4, 16), (8, 8)):
        src = gen_instance("lossy", N, mode="uniform", seed=ns.seed).instance
        red = lossy_stretch(src, src.M * mult)
        eps = (src.M - src.N) / src.N
        bound = 2 * math.ceil(math.log2(src.M * mult / src.N) / eps) + 2
        w = max(
            worst(red.target.g, red.target.M, 3), worst(red.target.f, red.target.N)
        )
        print(f"  N={N}, target_M={src.M * mult:>4}: worst {w:>3} bound {bound:>3}")


if __name__ == "__main__":
    main()

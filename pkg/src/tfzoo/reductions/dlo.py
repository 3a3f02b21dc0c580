"""Dense linear order to a compressing pair over median-search words.

Elements map to the branch word of a median binary search from a fixed
anchor interval; words map back by replaying the search.  The word space
{L,R}^(<= 4 ceil(log N)) is more than twice the universe, and every word the
round trip misses replays into either a 3-cycle or an invalid median.
"""

from __future__ import annotations

from ..oracle import QueryLedger, make_rule_fn
from ..problems import DLOInstance, LossyInstance, Solution
from .base import BackmapError, Reduction


def _word_index(word: list[int]) -> int:
    # words of all lengths 0..ell, ordered by length then lexicographically
    idx = 1 << len(word)
    for i, c in enumerate(word):
        idx |= (c - 1) << (len(word) - 1 - i)
    return idx


def _index_word(idx: int) -> list[int]:
    j = idx.bit_length() - 1
    bits = idx - (1 << j)
    return [((bits >> (j - 1 - i)) & 1) + 1 for i in range(j)]


def dlo_to_lossy(src: DLOInstance) -> Reduction:
    N = src.N
    if N < 2:
        raise ValueError("dlo_to_lossy needs N >= 2 to fix anchors")
    ell = 4 * max((N - 1).bit_length(), 1)
    W = (1 << (ell + 1)) - 1  # words of length <= ell
    setup = QueryLedger()
    l0, r0 = (1, 2) if src.prec(1, 2, setup) else (2, 1)

    def f_run(m: int, ledger: QueryLedger) -> list[int]:
        """Branch word of the search for m (may stop early on a median hit)."""
        word: list[int] = []
        l, r = l0, r0
        for _ in range(ell):
            mid = src.median(l, r, ledger)
            if mid == m:
                return word
            if src.prec(m, mid, ledger):
                r = mid
                word.append(1)
            else:
                l = mid
                word.append(2)
        return word

    def g_run(word: list[int], ledger: QueryLedger) -> tuple[int, list[tuple[int, int]]]:
        """Replay a word; returns (endpoint, the interval trace l_0..l_k)."""
        l, r = l0, r0
        trace = [(l, r)]
        for c in word:
            mid = src.median(l, r, ledger)
            if c == 1:
                r = mid
            else:
                l = mid
            trace.append((l, r))
        return src.median(l, r, ledger), trace

    def f_rule(m: int, ledger: QueryLedger) -> int:
        return _word_index(f_run(m, ledger))

    def g_rule(widx: int, ledger: QueryLedger) -> int:
        return g_run(_index_word(widx), ledger)[0]

    target = LossyInstance(
        N, W, make_rule_fn(f_rule, N, W, name="f*"), make_rule_fn(g_rule, W, N, name="g*")
    )

    def invalid_median(l: int, r: int) -> Solution:
        return Solution("dlo", "s2", (l, r))

    def check_interval_validity(trace, ledger) -> Solution | None:
        """First interval with l not-preceding r pins an invalid median on
        the previous one."""
        for t in range(1, len(trace)):
            l, r = trace[t]
            if not src.prec(l, r, ledger):
                return invalid_median(*trace[t - 1])
        return None

    def escape_left(trace, i: int, v: int, ledger) -> Solution:
        """Interval i of the replay has l_i not-preceding v."""
        k = len(trace) - 1
        if not src.prec(trace[k][0], v, ledger):
            return invalid_median(*trace[k])
        j = i
        while not src.prec(trace[j + 1][0], v, ledger):
            j += 1
        lj, rj = trace[j]
        lj1 = trace[j + 1][0]
        if not src.prec(lj, lj1, ledger):
            return invalid_median(lj, rj)
        return Solution("dlo", "s1", (lj, lj1, v))

    def escape_right(trace, i: int, v: int, ledger) -> Solution:
        k = len(trace) - 1
        if not src.prec(v, trace[k][1], ledger):
            return invalid_median(*trace[k])
        j = i
        while not src.prec(v, trace[j + 1][1], ledger):
            j += 1
        lj, rj = trace[j]
        rj1 = trace[j + 1][1]
        if not src.prec(rj1, rj, ledger):
            return invalid_median(lj, rj)
        return Solution("dlo", "s1", (v, rj1, rj))

    def back(sol: Solution, ledger: QueryLedger) -> Solution:
        (widx,) = sol.witness
        word = _index_word(widx)
        v, trace = g_run(word, ledger)
        bad = check_interval_validity(trace, ledger)
        if bad is not None:
            return bad
        word_f = f_run(v, ledger)
        _, trace_f = g_run(word_f, ledger)
        bad = check_interval_validity(trace_f, ledger)
        if bad is not None:
            return bad
        # smallest divergence index (1-based); f's word cannot extend ours
        i = None
        for t in range(min(len(word), len(word_f))):
            if word[t] != word_f[t]:
                i = t + 1
                break
        if i is None:
            if len(word_f) < len(word):
                i = len(word_f) + 1
            else:
                raise BackmapError(f"word {widx} round-trips but was claimed failing")
        if word[i - 1] == 1:
            # we went left: interval i has r_i = med(i-1), and v is not below it
            return escape_right(trace, i, v, ledger)
        return escape_left(trace, i, v, ledger)

    return Reduction("dlo_to_lossy", src, target, back, budget=8 * (ell + 1))

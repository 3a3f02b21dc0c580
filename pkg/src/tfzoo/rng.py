"""Seeded counter-based random generator.

Every randomized component of the package draws from this generator so that
runs are reproducible from a single integer seed and trials can be split
across workers without shared state.  The core is a splitmix64-style mixer:
output i of stream s is a pure function of (s, i).
"""

from __future__ import annotations

from dataclasses import dataclass

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


@dataclass
class Rng:
    """Counter-based RNG: stateful convenience API over a stateless mixer."""

    seed: int
    counter: int = 0

    def _next(self) -> int:
        self.counter += 1
        return _mix((self.seed + self.counter * _GOLDEN) & _MASK)

    def bits(self, k: int) -> int:
        """Uniform k-bit integer."""
        out = 0
        got = 0
        while got < k:
            out = (out << 64) | self._next()
            got += 64
        return out >> (got - k) if got > k else out

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], inclusive."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        span = hi - lo + 1
        k = span.bit_length()
        while True:
            v = self.bits(k)
            if v < span:
                return lo + v

    def coin(self) -> int:
        return self.bits(1)

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]

    def split(self, i: int) -> "Rng":
        """Independent child stream i; deterministic in (seed, i)."""
        return Rng(_mix((self.seed ^ _GOLDEN) + i * 0xD1B54A32D192ED03))

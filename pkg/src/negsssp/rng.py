"""Seedable splitmix64 generator and clamped geometric sampling.

The stream depends only on the seed and the order of calls, so runs are
reproducible bit-for-bit across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_FIX = 32  # fixed-point bits for the geometric parameter


class Rng:
    __slots__ = ("state",)

    def __init__(self, seed: int = 0):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform double in ``[0, 1)`` built from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def unit(self) -> float:
        """Uniform double in ``(0, 1]``."""
        return ((self.next_u64() >> 11) + 1) * (1.0 / (1 << 53))

    def randbelow(self, k: int) -> int:
        if k <= 0:
            raise ValueError("k must be positive")
        return (self.next_u64() * k) >> 64

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.randbelow(hi - lo + 1)

    def child(self) -> "Rng":
        return Rng(self.next_u64())


def rng_new(seed: int) -> Rng:
    return Rng(seed)


@dataclass(frozen=True)
class GeometricParam:
    """Success probability ``num/den`` in ``(0, 1]``."""

    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0 or not 0 < self.num <= self.den:
            raise ValueError(f"invalid probability {self.num}/{self.den}")

    @property
    def p(self) -> float:
        return self.num / self.den

    @classmethod
    def for_ldd(cls, n: int, diameter: int, numerator: int = 80) -> "GeometricParam":
        """``min(1, numerator * log2(n) / D)`` in fixed point."""
        if diameter < 1:
            raise ValueError("diameter must be at least 1")
        num = int(round(numerator * math.log2(max(n, 2)) * (1 << _FIX)))
        den = diameter << _FIX
        return cls(min(num, den), den)


def sample_geometric(rng: Rng, p: GeometricParam, r_max: int) -> int:
    """``min(X, r_max)`` with ``X ~ Geo(p)`` by inverse transform."""
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    if p.num == p.den:
        return 1
    u = rng.random()
    x = int(math.floor(math.log1p(-u) / math.log1p(-p.p))) + 1
    return min(x, r_max)

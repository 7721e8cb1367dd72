"""Classical unbiased random walk on the line, for comparison."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotNormalized

__all__ = ["ClassicalDistribution", "classical_distribution", "spread"]


@dataclass(frozen=True)
class ClassicalDistribution:
    t: int
    probabilities: dict[int, float]


def classical_distribution(t: int) -> ClassicalDistribution:
    """Symmetric binomial distribution after ``t`` fair +-1 steps.

    Exact integer binomials divided by ``2**t``; Python's big-int true
    division is correctly rounded, so nothing overflows for large ``t``.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    denom = 2**t
    probs = {}
    for n in range(-t, t + 1):
        probs[n] = math.comb(t, (t + n) // 2) / denom if (t + n) % 2 == 0 else 0.0
    return ClassicalDistribution(t, probs)


def spread(dist) -> float:
    """Standard deviation of a position distribution.

    ``dist`` is a mapping position -> probability or a
    :class:`ClassicalDistribution`.
    """
    if isinstance(dist, ClassicalDistribution):
        dist = dist.probabilities
    total = math.fsum(dist.values())
    if abs(total - 1.0) > 1e-6:
        raise NotNormalized(f"probabilities sum to {total!r}")
    mean = math.fsum(n * p for n, p in dist.items())
    second = math.fsum(n * n * p for n, p in dist.items())
    return math.sqrt(max(second - mean * mean, 0.0))

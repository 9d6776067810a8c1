"""
Whether (k leaves, n vertices) has positive probability under w.

n - k internal vertices must carry n - 1 children between them. Subtracting
one per internal vertex, this is a sumset question: can k - 1 be written as
a sum of exactly n - k values from {j - 1 : j >= 1, w_j > 0}?
"""

from __future__ import annotations

import numpy as np
from scipy import signal

from src.offspring.distribution import DistributionKind, OffspringDistribution, validate


def _indicator_convolve(a: np.ndarray, b: np.ndarray, limit: int) -> np.ndarray:
    out = signal.convolve(a, b)[: limit + 1]
    return (out > 0.5).astype(float)


def reachable_sums(sizes: list[int], parts: int, target: int) -> np.ndarray:
    """Boolean mask over 0..target of sums of exactly `parts` values from `sizes`."""
    base = np.zeros(target + 1)
    for s in sizes:
        if s <= target:
            base[s] = 1.0
    acc = np.zeros(target + 1)
    acc[0] = 1.0
    # binary powering of the indicator polynomial, truncated at target
    while parts:
        if parts & 1:
            acc = _indicator_convolve(acc, base, target)
        parts >>= 1
        if parts:
            base = _indicator_convolve(base, base, target)
    return acc > 0.5


def feasible(w: OffspringDistribution, k: int, n: int) -> bool:
    validate(w)
    if n < 1 or k < 1 or k > n:
        return False
    parts, target = n - k, k - 1
    if parts == 0:
        return target == 0
    if w.kind is DistributionKind.GEOMETRIC:
        return True

    sizes = [j - 1 for j in range(1, w.max_degree + 1) if w.weight(j) > 0]
    if parts * min(sizes) > target or parts * max(sizes) < target:
        return False
    return bool(reachable_sums(sizes, parts, target)[target])

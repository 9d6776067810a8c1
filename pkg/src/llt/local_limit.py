"""
Local limit theorem for sums of truncated integer variables, checked
numerically against the exact pmf obtained by repeated convolution.
"""

from __future__ import annotations
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import pandas as pd
from scipy import signal

from src.utils.errors import DegenerateSupport, LatticeStep, TooLarge, ZeroMass

logger = logging.getLogger(__name__)

MAX_PMF_LENGTH = 1_000_000


def _moments(p: np.ndarray) -> tuple[float, float, float]:
    x = np.arange(len(p), dtype=float)
    mean = float(np.dot(x, p))
    var = float(np.dot((x - mean) ** 2, p))
    m3 = float(np.dot(np.abs(x - mean) ** 3, p))
    return mean, var, m3


@dataclass(frozen=True, eq=False)
class TruncatedDistribution:
    base: np.ndarray
    cutoff: int | None
    weights: np.ndarray

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.weights > 0)

    @property
    def mean(self) -> float:
        return _moments(self.weights)[0]

    @property
    def variance(self) -> float:
        return _moments(self.weights)[1]

    @property
    def sigma(self) -> float:
        return math.sqrt(self.variance)

    @property
    def third_abs_moment(self) -> float:
        return _moments(self.weights)[2]

    @property
    def base_mean(self) -> float:
        return _moments(self.base)[0]

    @property
    def base_sigma(self) -> float:
        return math.sqrt(_moments(self.base)[1])

    @property
    def base_third_abs_moment(self) -> float:
        return _moments(self.base)[2]


def maximal_step(support: Iterable[int]) -> int:
    values = np.unique(np.asarray(list(support), dtype=np.int64))
    if len(values) < 2:
        raise DegenerateSupport(f"support {values.tolist()} has fewer than two values")
    return int(np.gcd.reduce(np.diff(values)))


def truncate(w: Sequence[float] | np.ndarray, cutoff: int | None) -> TruncatedDistribution:
    """Law of xi given xi <= cutoff; cutoff None keeps the whole vector."""
    base = np.asarray(w, dtype=float)
    if cutoff is not None and cutoff < 0:
        raise ValueError(f"cutoff must be nonnegative, got {cutoff}")
    kept = base.copy() if cutoff is None or cutoff >= len(base) - 1 else base[: cutoff + 1].copy()
    mass = math.fsum(kept)
    if mass <= 0:
        raise ZeroMass(f"no probability mass at or below {cutoff}")
    return TruncatedDistribution(base=base, cutoff=cutoff, weights=kept / mass)


def sum_pmf_exact(d: TruncatedDistribution, count: int) -> np.ndarray:
    """pmf of the sum of `count` iid copies, indexed 0..count*A."""
    if count < 1:
        raise ValueError(f"number of summands must be positive, got {count}")
    top = len(d.weights) - 1
    if count * top > MAX_PMF_LENGTH:
        raise TooLarge(f"sum pmf would have {count * top + 1} entries (limit {MAX_PMF_LENGTH})")
    result = np.ones(1)
    power = d.weights.copy()
    k = count
    while k:
        if k & 1:
            result = signal.convolve(result, power)
        k >>= 1
        if k:
            power = signal.convolve(power, power)
    result = np.clip(result, 0.0, None)
    total = math.fsum(result)
    if abs(total - 1.0) > 1e-12:
        logger.warning("sum pmf for %d summands has total mass %.15g", count, total)
    return result


def llt_sup_error(d: TruncatedDistribution, count: int) -> float:
    """sup_n |sigma sqrt(N) P(S_N = n) - phi((n - aN) / (sigma sqrt(N)))| with base a, sigma."""
    step = maximal_step(d.support)
    if step != 1:
        raise LatticeStep(f"maximal step is {step}, expected 1")
    pmf = sum_pmf_exact(d, count)
    a, sigma = d.base_mean, d.base_sigma
    x = np.arange(len(pmf), dtype=float)
    gauss = np.exp(-((x - a * count) ** 2) / (2.0 * sigma**2 * count)) / math.sqrt(2.0 * math.pi)
    return float(np.max(np.abs(sigma * math.sqrt(count) * pmf - gauss)))


def cutoff_schedule(count: int) -> int:
    return math.ceil(math.sqrt(count))


def llt_table(base: Sequence[float] | np.ndarray, counts: Iterable[int]) -> pd.DataFrame:
    rows = []
    for N in counts:
        A = cutoff_schedule(N)
        err = llt_sup_error(truncate(base, A), N)
        logger.info("llt N=%d A_N=%d sup_error=%.6g", N, A, err)
        rows.append({"N": N, "A_N": A, "sup_error": err})
    return pd.DataFrame(rows, columns=["N", "A_N", "sup_error"])

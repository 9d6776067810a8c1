"""
Monte Carlo aggregates and the two-sample Kolmogorov-Smirnov statistic.
"""

from __future__ import annotations
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
import pandas as pd
from scipy import stats

from src.utils.errors import EmptyBatch


@dataclass(frozen=True, eq=False)
class EmpiricalSummary:
    samples: int
    values: np.ndarray | None = None
    histogram: np.ndarray | None = None
    mean: float = float("nan")
    variance: float = float("nan")
    metadata: dict = field(default_factory=dict)

    @classmethod
    def from_values(cls, values: Iterable[float], metadata: dict | None = None) -> "EmpiricalSummary":
        arr = np.sort(np.asarray(list(values), dtype=float))
        mean = float(arr.mean()) if len(arr) else float("nan")
        var = float(arr.var()) if len(arr) else float("nan")
        return cls(len(arr), values=arr, mean=mean, variance=var, metadata=dict(metadata or {}))

    @classmethod
    def from_histogram(cls, counts: Iterable[int], metadata: dict | None = None) -> "EmpiricalSummary":
        hist = np.asarray(list(counts), dtype=np.int64)
        total = int(hist.sum())
        if total:
            x = np.arange(len(hist))
            mean = float(np.dot(x, hist) / total)
            var = float(np.dot((x - mean) ** 2, hist) / total)
        else:
            mean = var = float("nan")
        return cls(total, histogram=hist, mean=mean, variance=var, metadata=dict(metadata or {}))

    def quantile(self, q: float) -> float:
        if self.values is None or not self.samples:
            raise EmptyBatch("quantile needs stored sample values")
        return float(np.quantile(self.values, q))

    @property
    def median(self) -> float:
        return self.quantile(0.5)

    def to_frame(self) -> pd.DataFrame:
        if self.values is not None:
            return pd.DataFrame({"value": self.values})
        return pd.DataFrame({"index": np.arange(len(self.histogram)), "count": self.histogram})


def two_sample_ks(a: EmpiricalSummary, b: EmpiricalSummary) -> float:
    """sup_x |F_a(x) - F_b(x)| over the pooled sample points."""
    if a.values is None or b.values is None or not a.samples or not b.samples:
        raise EmptyBatch("two-sample KS needs two non-empty value samples")
    # only the statistic is used
    return float(stats.ks_2samp(a.values, b.values, method="asymp").statistic)

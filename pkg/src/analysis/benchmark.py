"""
Wall-clock timing of single draws, for the linear-time check and `bench`.
"""

from __future__ import annotations
import logging
import time
from typing import Iterable

import numpy as np
import pandas as pd

from src.offspring.distribution import OffspringDistribution
from src.sampler.algorithm_a import ConditionedTreeSampler
from src.sampler.rng import make_rng, spawn_streams

logger = logging.getLogger(__name__)


def time_sampler(
    w: OffspringDistribution,
    alpha: float,
    n_values: Iterable[int],
    repeats: int,
    seed: int,
) -> pd.DataFrame:
    """Mean and max seconds per draw at k = round(alpha n); plan setup is not timed."""
    rows = []
    n_values = list(n_values)
    for n, stream in zip(n_values, spawn_streams(seed, len(n_values))):
        k = int(round(alpha * n))
        sampler = ConditionedTreeSampler(w, k, n, alpha=alpha)
        rng = make_rng(stream)
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            sampler.sample(rng)
            times.append(time.perf_counter() - t0)
        rows.append({"n": n, "k": k, "repeats": repeats, "mean_seconds": float(np.mean(times)), "max_seconds": float(np.max(times))})
        logger.info("n=%d: %.4fs mean over %d draws", n, rows[-1]["mean_seconds"], repeats)
    return pd.DataFrame(rows)


def linearity_ratio(frame: pd.DataFrame, n_lo: int, n_hi: int) -> float:
    by_n = frame.set_index("n")["mean_seconds"]
    return float(by_n.loc[n_hi] / by_n.loc[n_lo])

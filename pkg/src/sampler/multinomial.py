"""
Multinomial counts conditioned on a weighted sum, by rejection.
"""

from __future__ import annotations
import logging
import math
from dataclasses import dataclass

import numpy as np

from src.utils.errors import RejectionBudgetExceeded

logger = logging.getLogger(__name__)


def default_max_rejections(n: int) -> int:
    return 1000 * math.ceil(math.sqrt(max(n, 1)))


@dataclass(frozen=True, eq=False)
class ConditionedCounts:
    counts: np.ndarray
    attempts: int

    def expand(self) -> np.ndarray:
        """Sorted sequence holding counts[j] copies of j."""
        return np.repeat(np.arange(len(self.counts)), self.counts)


def conditioned_multinomial(
    hat_w: np.ndarray,
    parts: int,
    target: int,
    rng: np.random.Generator,
    max_rejections: int | None = None,
) -> ConditionedCounts:
    """Draw Multinomial(parts, hat_w) until sum_j j N_j == target."""
    probs = np.asarray(hat_w, dtype=float)
    probs = probs / probs.sum()
    values = np.arange(len(probs))
    budget = max_rejections or default_max_rejections(target + 1)
    for attempt in range(1, budget + 1):
        counts = rng.multinomial(parts, probs)
        if int(counts @ values) == target:
            return ConditionedCounts(counts, attempt)
    raise RejectionBudgetExceeded(
        f"no multinomial draw with {parts} parts summed to {target} in {budget} attempts"
    )

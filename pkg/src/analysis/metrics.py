"""
Per-tree and per-batch statistics behind the limit-theorem checks.
"""

from __future__ import annotations
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.encodings.paths import contour, lukasiewicz
from src.encodings.tree import OrderedTree
from src.offspring.alpha_shift import AlphaShift
from src.utils.errors import EmptyBatch, MixedBatch

PROFILE_FLOOR = 1e-6


def degree_profile(trees: Sequence[OrderedTree]) -> np.ndarray:
    """Mean over trees of n_j(T)/n, indexed by child count j."""
    if not trees:
        raise EmptyBatch("degree profile of an empty batch")
    shape = {(t.leaf_count, t.n) for t in trees}
    if len(shape) > 1:
        raise MixedBatch(f"batch mixes (k, n) values: {sorted(shape)[:3]}")
    width = max(int(t.degrees.max()) for t in trees) + 1
    total = np.zeros(width)
    for t in trees:
        total += np.bincount(t.degrees, minlength=width)
    return total / (len(trees) * trees[0].n)


def degree_profile_deviation(trees: Sequence[OrderedTree], shift: AlphaShift) -> float:
    profile = degree_profile(trees)
    target = shift.w_star
    width = max(len(profile), len(target))
    profile = np.pad(profile, (0, width - len(profile)))
    target = np.pad(target, (0, width - len(target)))
    mask = target > PROFILE_FLOOR
    return float(np.max(np.abs(profile[mask] - target[mask])))


def rescaled_height(tree: OrderedTree, sigma_star: float) -> float:
    return sigma_star * tree.height / (2.0 * math.sqrt(tree.n))


def rescaled_contour_max(tree: OrderedTree, sigma_star: float) -> float:
    return sigma_star * int(contour(tree).values.max()) / (2.0 * math.sqrt(tree.n))


@dataclass(frozen=True)
class ProcessCloseness:
    sup_SH: float
    sup_SC: float
    sup_tau: float


def process_closeness(tree: OrderedTree, sigma_star_sq: float) -> ProcessCloseness:
    """Sup distances between the Lukasiewicz path and the rescaled height/contour paths."""
    n = tree.n
    s = lukasiewicz(tree).values[:n].astype(float)
    h = tree.depths.astype(float)
    c = contour(tree).values.astype(float)
    half = sigma_star_sq / 2.0
    l = np.arange(n)
    sup_sh = np.max(np.abs(s - half * h))
    sup_sc = np.max(np.abs(s - half * c[2 * l]))
    # tau(k) = index of the last vertex first reached at or before contour step k
    m = 2 * l - tree.depths
    steps = np.arange(2 * n - 1)
    tau = np.searchsorted(m, steps, side="right") - 1
    sup_tau = np.max(np.abs(tau - steps / 2.0))
    return ProcessCloseness(float(sup_sh), float(sup_sc), float(sup_tau))

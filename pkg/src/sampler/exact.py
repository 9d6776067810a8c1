"""
Exhaustive oracle: every tree with (k, n) and its exact conditional probability.
"""

from __future__ import annotations
import math

from src.encodings.tree import OrderedTree, all_ordered_trees
from src.offspring.distribution import OffspringDistribution, validate
from src.utils.errors import EmptySet, TooLarge

MAX_EXACT_N = 12


def enumerate_exact(w: OffspringDistribution, k: int, n: int) -> list[tuple[OrderedTree, float]]:
    if n > MAX_EXACT_N:
        raise TooLarge(f"exhaustive enumeration is limited to n <= {MAX_EXACT_N}, got {n}")
    validate(w)
    trees: list[OrderedTree] = []
    weights: list[float] = []
    for degrees in all_ordered_trees(n, leaves=k):
        weight = math.prod(w.weight(d) for d in degrees)
        if weight > 0:
            trees.append(OrderedTree(degrees))
            weights.append(weight)
    if not trees:
        raise EmptySet(f"no tree with k={k} leaves and n={n} vertices under {w.describe()}")
    total = math.fsum(weights)
    return [(t, x / total) for t, x in zip(trees, weights)]

"""
Allocations of n - 1 balls into n boxes, the degree-sequence map and the
cyclic shift that turns any allocation into a valid tree sequence.
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.encodings.tree import OrderedTree
from src.utils.errors import BadSum


@dataclass(frozen=True, eq=False)
class Allocation:
    y: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.y, dtype=np.int64).ravel()
        if np.any(arr < 0):
            raise ValueError("allocation entries must be nonnegative")
        arr.setflags(write=False)
        object.__setattr__(self, "y", arr)

    @property
    def n(self) -> int:
        return len(self.y)

    @property
    def balls(self) -> int:
        return int(self.y.sum())

    @property
    def is_balanced(self) -> bool:
        return self.balls == self.n - 1

    def occupation_profile(self) -> np.ndarray:
        """N_s = number of boxes holding exactly s balls."""
        return np.bincount(self.y)

    def key(self) -> tuple[int, ...]:
        return tuple(self.y.tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Allocation):
            return NotImplemented
        return np.array_equal(self.y, other.y)

    def __hash__(self) -> int:
        return hash(self.y.tobytes())


def degree_sequence(tree: OrderedTree) -> Allocation:
    return Allocation(tree.degrees.copy())


def tree_from_degree_sequence(a: Allocation | Sequence[int]) -> OrderedTree:
    y = a.y if isinstance(a, Allocation) else a
    return OrderedTree(y)


def cyclic_shift(a: Allocation) -> tuple[Allocation, int]:
    """Rotate a balanced allocation to the unique rotation that encodes a tree.

    The rotation starts right after the first index where the partial sums
    of y_i - 1 reach their minimum. Inputs already encoding a tree report
    shift index 0.
    """
    if not a.is_balanced:
        raise BadSum(f"allocation of length {a.n} holds {a.balls} balls, expected {a.n - 1}")
    walk = np.concatenate(([0], np.cumsum(a.y - 1)))
    j = int(np.argmin(walk))
    if j == a.n:
        return a, 0
    return Allocation(np.roll(a.y, -j)), j

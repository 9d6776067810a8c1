# ⚠️ Reproducibility Notice:
# Vertex i is always the i-th vertex reached by depth-first search. Two trees
# are equal iff their child-count sequences are equal.

"""
Ordered rooted trees.

An OrderedTree is stored as its child counts in DFS order; parents and depths
are decoded once at construction with an explicit stack so million-vertex
trees never touch the recursion limit.
"""

from __future__ import annotations
import logging
from typing import Iterator, Sequence

import numpy as np

from src.utils.errors import NotATreeSequence

logger = logging.getLogger(__name__)


def lukasiewicz_violation(degrees: np.ndarray) -> str | None:
    """Reason why `degrees` is not a DFS child-count sequence, or None."""
    n = len(degrees)
    if n == 0:
        return "empty sequence"
    if np.any(degrees < 0):
        return "negative child count"
    partial = np.cumsum(degrees - 1)
    if partial[-1] != -1:
        return f"child counts sum to {int(partial[-1]) + n}, expected {n - 1}"
    if n > 1 and partial[:-1].min() < 0:
        step = int(np.argmax(partial[:-1] < 0)) + 1
        return f"partial sum drops below zero at step {step}"
    return None


def _decode(degrees: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = len(degrees)
    parents = [-1] * n
    depths = [0] * n
    open_slots: list[list[int]] = []  # [vertex, children still to attach]
    for i, d in enumerate(degrees.tolist()):
        if open_slots:
            top = open_slots[-1]
            parents[i] = top[0]
            depths[i] = depths[top[0]] + 1
            top[1] -= 1
            if top[1] == 0:
                open_slots.pop()
        if d:
            open_slots.append([i, d])
    return np.asarray(parents, dtype=np.int64), np.asarray(depths, dtype=np.int64)


class OrderedTree:
    """Rooted plane tree, vertices numbered in DFS first-visit order."""

    root = 0

    def __init__(self, degrees: Sequence[int] | np.ndarray):
        arr = np.array(degrees, dtype=np.int64).ravel()
        reason = lukasiewicz_violation(arr)
        if reason:
            raise NotATreeSequence(reason)
        arr.setflags(write=False)
        self._degrees = arr
        self._parents, self._depths = _decode(arr)
        self._parents.setflags(write=False)
        self._depths.setflags(write=False)
        self._children: tuple[tuple[int, ...], ...] | None = None

    # ---------- constructors ----------
    @classmethod
    def from_children(cls, children: Sequence[Sequence[int]]) -> "OrderedTree":
        """Build from per-vertex child lists, checking they form a DFS-numbered tree."""
        n = len(children)
        if n == 0:
            raise NotATreeSequence("empty child lists")
        order: list[int] = []
        seen = [False] * n
        stack = [0]
        while stack:
            v = stack.pop()
            if not 0 <= v < n or seen[v]:
                raise NotATreeSequence(f"vertex {v} is out of range or reached twice")
            seen[v] = True
            order.append(v)
            stack.extend(reversed(children[v]))
        if order != list(range(n)):
            raise NotATreeSequence("child lists are not numbered in DFS first-visit order")
        return cls([len(c) for c in children])

    @classmethod
    def from_parens(cls, text: str) -> "OrderedTree":
        """Parse '(()())': '(' on first visit, ')' on last visit."""
        text = "".join(text.split())
        if not text or set(text) - {"(", ")"}:
            raise NotATreeSequence("parenthesis string must contain only '(' and ')'")
        degrees: list[int] = []
        stack: list[int] = []
        for pos, ch in enumerate(text):
            if ch == "(":
                if stack:
                    degrees[stack[-1]] += 1
                elif degrees:
                    raise NotATreeSequence(f"second root opened at position {pos}")
                stack.append(len(degrees))
                degrees.append(0)
            else:
                if not stack:
                    raise NotATreeSequence(f"unbalanced ')' at position {pos}")
                stack.pop()
        if stack:
            raise NotATreeSequence("unbalanced parentheses")
        return cls(degrees)

    @classmethod
    def from_counts_line(cls, line: str) -> "OrderedTree":
        try:
            degrees = [int(tok) for tok in line.split()]
        except ValueError as e:
            raise NotATreeSequence(f"non-integer child count in {line!r}") from e
        return cls(degrees)

    # ---------- exporters ----------
    def to_counts_line(self) -> str:
        return " ".join(str(d) for d in self._degrees.tolist())

    def to_parens(self) -> str:
        out: list[str] = []
        remaining: list[int] = []
        for d in self._degrees.tolist():
            out.append("(")
            remaining.append(d)
            while remaining and remaining[-1] == 0:
                remaining.pop()
                out.append(")")
                if remaining:
                    remaining[-1] -= 1
        return "".join(out)

    # ---------- accessors ----------
    @property
    def n(self) -> int:
        return len(self._degrees)

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    @property
    def parents(self) -> np.ndarray:
        return self._parents

    @property
    def depths(self) -> np.ndarray:
        return self._depths

    @property
    def children(self) -> tuple[tuple[int, ...], ...]:
        if self._children is None:
            lists: list[list[int]] = [[] for _ in range(self.n)]
            for v, p in enumerate(self._parents.tolist()):
                if p >= 0:
                    lists[p].append(v)
            self._children = tuple(tuple(c) for c in lists)
        return self._children

    @property
    def leaf_count(self) -> int:
        return int(np.count_nonzero(self._degrees == 0))

    @property
    def height(self) -> int:
        return int(self._depths.max())

    def key(self) -> tuple[int, ...]:
        return tuple(self._degrees.tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrderedTree):
            return NotImplemented
        return np.array_equal(self._degrees, other._degrees)

    def __hash__(self) -> int:
        return hash(self._degrees.tobytes())

    def __repr__(self) -> str:
        if self.n <= 16:
            return f"OrderedTree({self.key()})"
        return f"OrderedTree(n={self.n}, leaves={self.leaf_count})"

    def __getstate__(self) -> dict:
        return {"degrees": self._degrees.tolist()}

    def __setstate__(self, state: dict) -> None:
        self.__init__(state["degrees"])


def all_ordered_trees(n: int, leaves: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield child-count sequences of every ordered tree on n vertices.

    Optionally keep only trees with the given number of leaves. Generation
    walks Lukasiewicz words depth first with an explicit stack.
    """
    if n < 1:
        return
    # frame: (prefix, partial sum S after prefix, zeros so far)
    stack: list[tuple[tuple[int, ...], int, int]] = [((), 0, 0)]
    while stack:
        prefix, s, zeros = stack.pop()
        i = len(prefix)
        if i == n:
            if leaves is None or zeros == leaves:
                yield prefix
            continue
        if i == n - 1:
            # the final step must land exactly on -1
            lo = hi = -s
        else:
            # stay >= 0 and keep -1 reachable in the remaining steps
            lo = max(0, 1 - s)
            hi = n - 1 - i - s
        for d in range(hi, lo - 1, -1):
            z = zeros + (d == 0)
            if leaves is not None and (z > leaves or z + (n - i - 1) < leaves):
                continue
            stack.append((prefix + (d,), s + d - 1, z))

"""
Path encodings of an ordered tree: Lukasiewicz, contour and height paths,
plus the DFS walk and the first-visit times m(l) that tie them together.
"""

from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable

import numpy as np
import pandas as pd

from src.encodings.allocation import Allocation
from src.encodings.tree import OrderedTree


class PathRole(str, Enum):
    LUKASIEWICZ = "lukasiewicz"
    CONTOUR = "contour"
    HEIGHT = "height"
    BRIDGE = "bridge"


@dataclass(frozen=True, eq=False)
class LatticePath:
    role: PathRole
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"index": np.arange(len(self.values)), "value": self.values})

    def to_csv(self, path: str | Path) -> Path:
        p = Path(path)
        p.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(p, index=False)
        return p


def lukasiewicz(tree: OrderedTree) -> LatticePath:
    values = np.concatenate(([0], np.cumsum(tree.degrees - 1)))
    return LatticePath(PathRole.LUKASIEWICZ, values)


def height(tree: OrderedTree) -> LatticePath:
    return LatticePath(PathRole.HEIGHT, tree.depths.copy())


def bridge_path(a: Allocation) -> LatticePath:
    """Partial sums of y_i - 1 for an arbitrary (pre-shift) allocation."""
    return LatticePath(PathRole.BRIDGE, np.concatenate(([0], np.cumsum(a.y - 1))))


def contour(tree: OrderedTree) -> LatticePath:
    """Depth of the vertex visited at each of the 2n - 1 DFS steps."""
    h = tree.depths
    # segment l runs from vertex l down to the parent of vertex l+1
    seglen = np.empty(tree.n, dtype=np.int64)
    seglen[:-1] = h[:-1] - h[1:] + 2
    seglen[-1] = h[-1] + 1
    starts = np.cumsum(seglen) - seglen
    offsets = np.arange(2 * tree.n - 1) - np.repeat(starts, seglen)
    return LatticePath(PathRole.CONTOUR, np.repeat(h, seglen) - offsets)


def m_times(tree: OrderedTree) -> np.ndarray:
    """First DFS step at which each vertex is reached."""
    _, first = np.unique(np.asarray(dfs_walk(tree)), return_index=True)
    return first.astype(np.int64)


def dfs_walk(tree: OrderedTree) -> list[int]:
    """Vertices f_0..f_{2n-2} visited by the depth-first walk, explicit stack."""
    children = tree.children
    walk = [tree.root]
    stack = [[tree.root, 0]]
    while stack:
        frame = stack[-1]
        v, i = frame
        if i < len(children[v]):
            frame[1] += 1
            c = children[v][i]
            walk.append(c)
            stack.append([c, 0])
        else:
            stack.pop()
            if stack:
                walk.append(stack[-1][0])
    return walk


def count_right_minima(values: np.ndarray) -> np.ndarray:
    """r[l] = #{i < l : values[i] <= values[k] for every i <= k <= l}."""
    out = np.empty(len(values), dtype=np.int64)
    stack: list[int] = []
    for l, v in enumerate(np.asarray(values).tolist()):
        while stack and stack[-1] > v:
            stack.pop()
        out[l] = len(stack)
        stack.append(v)
    return out


def height_from_lukasiewicz(path: LatticePath) -> LatticePath:
    if path.role is not PathRole.LUKASIEWICZ:
        raise ValueError(f"expected a Lukasiewicz path, got {path.role.value}")
    return LatticePath(PathRole.HEIGHT, count_right_minima(path.values[:-1]))


def paths_to_frame(paths: Iterable[LatticePath], tree_id: int | None = None) -> pd.DataFrame:
    frames = []
    for p in paths:
        f = p.to_frame()
        f.insert(0, "role", p.role.value)
        if tree_id is not None:
            f.insert(0, "tree", tree_id)
        frames.append(f)
    return pd.concat(frames, ignore_index=True)

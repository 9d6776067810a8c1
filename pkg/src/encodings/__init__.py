from src.encodings.tree import OrderedTree, all_ordered_trees, lukasiewicz_violation
from src.encodings.allocation import (
    Allocation,
    cyclic_shift,
    degree_sequence,
    tree_from_degree_sequence,
)
from src.encodings.paths import (
    LatticePath,
    PathRole,
    bridge_path,
    contour,
    count_right_minima,
    dfs_walk,
    height,
    height_from_lukasiewicz,
    lukasiewicz,
    m_times,
    paths_to_frame,
)

__all__ = [
    "OrderedTree",
    "all_ordered_trees",
    "lukasiewicz_violation",
    "Allocation",
    "cyclic_shift",
    "degree_sequence",
    "tree_from_degree_sequence",
    "LatticePath",
    "PathRole",
    "bridge_path",
    "contour",
    "count_right_minima",
    "dfs_walk",
    "height",
    "height_from_lukasiewicz",
    "lukasiewicz",
    "m_times",
    "paths_to_frame",
]

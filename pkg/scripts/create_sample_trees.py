#!/usr/bin/env python3
"""
Create Sample Tree Files for the Galton-Watson Toolkit

Writes the 8-vertex reference tree in both text formats, a small batch of
exactly sampled trees and a distribution JSON, so `stats` and `--dist file:`
have something to read.
"""

import json
import logging
import sys
from pathlib import Path

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.encodings.tree import OrderedTree
from src.offspring.distribution import OffspringDistribution
from src.sampler.algorithm_a import sample_batch

REFERENCE_COUNTS = [3, 0, 1, 0, 2, 1, 0, 0]
SAMPLE_SEED = 20240601


def create_sample_trees(output_dir: Path = Path("data")) -> list[Path]:
    output_dir.mkdir(exist_ok=True)
    reference = OrderedTree(REFERENCE_COUNTS)

    counts_path = output_dir / "reference_tree.counts"
    counts_path.write_text(reference.to_counts_line() + "\n", encoding="utf-8")
    parens_path = output_dir / "reference_tree.parens"
    parens_path.write_text(reference.to_parens() + "\n", encoding="utf-8")

    w = OffspringDistribution.unary_binary(0.2)
    dist_path = output_dir / "unary_binary_p02.json"
    dist_path.write_text(w.to_json() + "\n", encoding="utf-8")

    results = sample_batch(OffspringDistribution.geometric(), 5, 20, 10, SAMPLE_SEED)
    batch_path = output_dir / "geometric_k5_n20.parens"
    header = {"distribution": "geometric", "k": 5, "n": 20, "count": 10, "seed": SAMPLE_SEED}
    lines = [json.dumps(header)] + [r.tree.to_parens() for r in results]
    batch_path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    return [counts_path, parens_path, dist_path, batch_path]


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    for p in create_sample_trees():
        print(f"[OK] wrote {p}")

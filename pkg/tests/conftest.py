import json
import sys
from pathlib import Path

import pytest

# Add project root to path for imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.encodings.tree import OrderedTree
from src.offspring.distribution import OffspringDistribution

REFERENCE_COUNTS = (3, 0, 1, 0, 2, 1, 0, 0)
REFERENCE_LUKASIEWICZ = (0, 2, 1, 1, 0, 1, 1, 0, -1)
REFERENCE_HEIGHT = (0, 1, 1, 2, 1, 2, 3, 2)
REFERENCE_M = (0, 1, 3, 4, 7, 8, 9, 12)
REFERENCE_CONTOUR = (0, 1, 0, 1, 2, 1, 0, 1, 2, 3, 2, 1, 2, 1, 0)
REFERENCE_PARENS = "(()(())((())()))"


@pytest.fixture
def reference_tree():
    return OrderedTree(REFERENCE_COUNTS)


@pytest.fixture
def geometric():
    return OffspringDistribution.geometric()


@pytest.fixture
def unary_binary():
    return OffspringDistribution.unary_binary(0.2)


@pytest.fixture
def cubic():
    """Finite law (0.3, 0.45, 0.2, 0.05) with mean 1 and max degree 3."""
    return OffspringDistribution.finite([0.3, 0.45, 0.2, 0.05])


@pytest.fixture
def app_config(tmp_path):
    """config.json that keeps the run ledger inside the test's tmp dir."""
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"log_dir": str(tmp_path / "logs"), "max_workers": 1}), encoding="utf-8")
    return path

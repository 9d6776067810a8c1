# ⚠️ Reproducibility Notice:
# Outputs embed the full config and seed; rerunning the recorded command
# reproduces them exactly.

"""
Galton-Watson Toolkit Runner
CLI runner for the shift solver, the exact sampler and the acceptance checks.
"""

from __future__ import annotations
import logging
import sys
from pathlib import Path

# Add project root to path for imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.cli.commands import main


if __name__ == "__main__":
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n[WARNING] interrupted by user", file=sys.stderr)
        sys.exit(1)

# ⚠️ Reproducibility Notice:
# Flags and config.json are the only inputs; there are no environment overrides.
# Every artifact starts with a header holding the full config and the seed.

"""
Command-line surface: shift, sample, stats, verify, llt, bench.

Exit codes: 0 success, 1 domain error (message echoed verbatim), 2 usage error.
"""

from __future__ import annotations
import argparse
import io
import json
import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Literal

import jsonlines
import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.analysis.acceptance import CHECKS, CheckReport, run_checks
from src.analysis.benchmark import linearity_ratio, time_sampler
from src.encodings.paths import contour, height, lukasiewicz, paths_to_frame
from src.encodings.tree import OrderedTree
from src.llt.local_limit import llt_table
from src.logging.run_ledger import log_run
from src.offspring.alpha_shift import alpha_shift, hat_shift
from src.offspring.distribution import OffspringDistribution
from src.sampler.algorithm_a import ConditionedTreeSampler, batch_metadata, sample_batch
from src.sampler.rng import RNG_ALGORITHM, fresh_seed
from src.utils.config_loader import Config, load_config
from src.utils.errors import ToolkitError

logger = logging.getLogger(__name__)

SUBCOMMANDS = ("shift", "sample", "stats", "verify", "llt", "bench")
RANDOMIZED = ("sample", "verify", "bench")
REQUIRED_FLAGS = {
    "shift": ("dist", "alpha"),
    "sample": ("dist", "k", "n"),
    "stats": ("tree_file",),
}


class CliConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    subcommand: Literal["shift", "sample", "stats", "verify", "llt", "bench"]
    dist: str | None = None
    p: float | None = None
    alpha: float | None = None
    k: int | None = Field(None, ge=0)
    n: int | None = Field(None, ge=1)
    batch: int = Field(1, ge=1)
    seed: int | None = Field(None, ge=0)
    format: Literal["parens", "counts", "csv", "json"] = "parens"
    out: str | None = None
    workers: int = Field(1, ge=1)
    checks: list[str] | None = None
    profile: Literal["full", "quick"] = "full"
    tree_file: str | None = None
    samples_dir: str | None = None
    N: list[int] = [100, 400, 1600]
    repeats: int = Field(20, ge=1)
    n_values: list[int] = [100_000, 500_000]
    config_path: str = "config.json"

    @model_validator(mode="after")
    def _check_flags(self) -> "CliConfig":
        missing = [f for f in REQUIRED_FLAGS.get(self.subcommand, ()) if getattr(self, f) is None]
        if missing:
            flags = ", ".join("--" + f.replace("_", "-") for f in missing)
            raise ValueError(f"{self.subcommand} requires {flags}")
        if self.dist == "unary_binary" and self.p is None:
            raise ValueError("--p is required with --dist unary_binary")
        if self.subcommand == "stats" and self.format not in ("json", "csv"):
            raise ValueError(f"stats writes json or csv, not --format {self.format}")
        if self.checks:
            unknown = [c for c in self.checks if c not in CHECKS]
            if unknown:
                raise ValueError(f"--checks: unknown check(s) {unknown}; choose from {list(CHECKS)}")
        return self


# ---------- parsing ----------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dist", help="geometric | unary_binary | file:<path> | inline JSON")
    common.add_argument("--p", type=float, help="unary-binary parameter p in (0, 1/2]")
    common.add_argument("--alpha", type=float, help="target leaf fraction for the shift")
    common.add_argument("--k", type=int, help="number of leaves")
    common.add_argument("--n", type=int, help="number of vertices")
    common.add_argument("--batch", type=int, help="number of trees (sample)")
    common.add_argument("--seed", type=int, help="RNG seed; a fresh one is drawn and recorded if omitted")
    common.add_argument("--format", choices=["parens", "counts", "csv", "json"])
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--workers", type=int, help="worker processes for batches")
    common.add_argument("--checks", nargs="+", help=f"subset of: {', '.join(CHECKS)}")
    common.add_argument("--profile", choices=["full", "quick"])
    common.add_argument("--tree-file", dest="tree_file", help="tree file in parens or counts format")
    common.add_argument("--samples-dir", dest="samples_dir", help="directory for raw per-check samples as CSV (verify)")
    common.add_argument("--N", dest="N", type=int, nargs="+", help="numbers of summands (llt)")
    common.add_argument("--repeats", type=int, help="draws per size (bench)")
    common.add_argument("--n-values", dest="n_values", type=int, nargs="+", help="tree sizes (bench)")
    common.add_argument("--config", dest="config_path", default="config.json")

    parser = argparse.ArgumentParser(
        prog="gw_toolkit",
        description="Conditioned Galton-Watson trees: shifts, exact sampling and checks",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python src/run_gw_toolkit.py shift --dist geometric --alpha 0.25
  python src/run_gw_toolkit.py sample --dist geometric --k 2 --n 4 --seed 7
  python src/run_gw_toolkit.py verify --profile quick --checks llt cycle_lemma
        """,
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def build_config(args: argparse.Namespace, app: Config) -> CliConfig:
    values = {k: v for k, v in vars(args).items() if v is not None}
    if values["subcommand"] == "stats":
        values.setdefault("format", "json")
    values.setdefault("batch", app.default_batch)
    values.setdefault("format", app.default_format)
    values.setdefault("workers", app.max_workers)
    values.setdefault("profile", app.verify_profile)
    if values["subcommand"] in RANDOMIZED and "seed" not in values:
        values["seed"] = fresh_seed()
    return CliConfig(**values)


# ---------- IO helpers ----------
@contextmanager
def _output(path: str | None) -> Iterator[io.TextIOBase]:
    if path is None:
        yield sys.stdout
        return
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", encoding="utf-8", newline="") as fh:
        yield fh


def _header(cfg: CliConfig, app: Config, **extra) -> dict:
    return {"config": cfg.model_dump(), "app_config": app.to_dict(), "rng": RNG_ALGORITHM, **extra}


def _write_frame(cfg: CliConfig, header: dict, frame: pd.DataFrame) -> None:
    with _output(cfg.out) as fh:
        if cfg.format == "json":
            writer = jsonlines.Writer(fh)
            writer.write(header)
            writer.write_all(frame.to_dict(orient="records"))
        else:
            fh.write("# " + json.dumps(header) + "\n")
            frame.to_csv(fh, index=False)


def _tree_paths_frame(trees: list[OrderedTree]) -> pd.DataFrame:
    return pd.concat(
        [paths_to_frame((lukasiewicz(t), height(t), contour(t)), tree_id=i) for i, t in enumerate(trees)],
        ignore_index=True,
    )


def _write_trees(cfg: CliConfig, header: dict, trees: list[OrderedTree], extra: list[dict] | None = None) -> None:
    if cfg.format == "csv":
        _write_frame(cfg, header, _tree_paths_frame(trees))
        return
    with _output(cfg.out) as fh:
        if cfg.format == "json":
            writer = jsonlines.Writer(fh)
            writer.write(header)
            for i, t in enumerate(trees):
                rec = {"index": i, "n": t.n, "leaves": t.leaf_count, "counts": t.degrees.tolist()}
                rec.update((extra or [{}] * len(trees))[i])
                writer.write(rec)
            return
        fh.write(json.dumps(header) + "\n")
        for t in trees:
            fh.write((t.to_parens() if cfg.format == "parens" else t.to_counts_line()) + "\n")


def load_tree_file(path: str | Path) -> list[OrderedTree]:
    """Read trees one per line; header lines starting with '{' or '#' are skipped."""
    trees = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line[0] in "{#":
            continue
        trees.append(OrderedTree.from_parens(line) if line[0] == "(" else OrderedTree.from_counts_line(line))
    return trees


def _distribution(cfg: CliConfig) -> OffspringDistribution:
    return OffspringDistribution.from_spec(cfg.dist or "geometric", cfg.p)


# ---------- subcommands ----------
def cmd_shift(cfg: CliConfig, app: Config) -> int:
    shift = alpha_shift(_distribution(cfg), cfg.alpha)
    with _output(cfg.out) as fh:
        fh.write(json.dumps(_header(cfg, app, shift=shift.to_dict()), indent=2) + "\n")
    return 0


def cmd_sample(cfg: CliConfig, app: Config) -> int:
    w = _distribution(cfg)
    sampler = ConditionedTreeSampler(w, cfg.k, cfg.n, alpha=cfg.alpha)
    results = sample_batch(w, cfg.k, cfg.n, cfg.batch, cfg.seed, alpha=cfg.alpha, max_workers=cfg.workers)
    header = _header(cfg, app, metadata=batch_metadata(sampler, cfg.seed, results))
    extra = [{"attempts": r.attempts, "shift_index": r.shift_index} for r in results]
    _write_trees(cfg, header, [r.tree for r in results], extra)
    return 0


def cmd_stats(cfg: CliConfig, app: Config) -> int:
    trees = load_tree_file(cfg.tree_file)
    header = _header(cfg, app, trees=len(trees))
    extra = [{"height": t.height, "degree_profile": (np.bincount(t.degrees) / t.n).tolist()} for t in trees]
    _write_trees(cfg, header, trees, extra)
    return 0


def _dump_samples(reports: list[CheckReport], directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for r in reports:
        if r.samples is not None:
            r.samples.to_csv(directory / f"{r.check}.csv", index=False)
            logger.info("wrote raw samples for %s to %s", r.check, directory)


def cmd_verify(cfg: CliConfig, app: Config) -> int:
    overrides = {"tv_samples": app.tv_samples} if cfg.profile == "full" else None
    reports = run_checks(cfg.checks, cfg.profile, cfg.seed, cfg.workers, overrides)
    header = _header(cfg, app)
    with _output(cfg.out) as fh:
        if cfg.format == "csv":
            fh.write("# " + json.dumps(header) + "\n")
            frame = pd.DataFrame([r.to_dict() for r in reports])
            frame["parameters"] = frame["parameters"].map(json.dumps)
            frame["threshold"] = frame["threshold"].map(json.dumps)
            frame.to_csv(fh, index=False)
        else:
            writer = jsonlines.Writer(fh)
            writer.write(header)
            writer.write_all(r.to_dict() for r in reports)
    if cfg.samples_dir:
        _dump_samples(reports, Path(cfg.samples_dir))
    failed = [r.check for r in reports if not r.passed]
    if failed:
        logger.warning("failed checks: %s", ", ".join(failed))
    return 0 if not failed else 1


def cmd_llt(cfg: CliConfig, app: Config) -> int:
    alpha = 0.25 if cfg.alpha is None else cfg.alpha
    w = _distribution(cfg)
    table = llt_table(hat_shift(alpha_shift(w, alpha)), cfg.N)
    _write_frame(cfg, _header(cfg, app, alpha=alpha), table)
    return 0


def cmd_bench(cfg: CliConfig, app: Config) -> int:
    alpha = 0.25 if cfg.alpha is None else cfg.alpha
    frame = time_sampler(_distribution(cfg), alpha, cfg.n_values, cfg.repeats, cfg.seed)
    extra = {"alpha": alpha}
    if len(cfg.n_values) >= 2:
        extra["ratio"] = linearity_ratio(frame, cfg.n_values[0], cfg.n_values[-1])
    _write_frame(cfg, _header(cfg, app, **extra), frame)
    return 0


COMMANDS = {
    "shift": cmd_shift,
    "sample": cmd_sample,
    "stats": cmd_stats,
    "verify": cmd_verify,
    "llt": cmd_llt,
    "bench": cmd_bench,
}


def run(cfg: CliConfig, app: Config | None = None) -> int:
    """Dispatch a validated config; map failures to exit codes and record the run."""
    app = app or load_config(cfg.config_path)
    error = None
    try:
        code = COMMANDS[cfg.subcommand](cfg, app)
    except ToolkitError as e:
        error = f"{type(e).__name__}: {e}"
        print(error, file=sys.stderr)
        code = 1
    except (ValueError, FileNotFoundError) as e:
        error = f"usage error: {e}"
        print(error, file=sys.stderr)
        code = 2
    log_run(cfg.subcommand, cfg.model_dump(), code, out_path=cfg.out, error=error, log_dir=app.log_dir)
    return code


def _format_validation(e: ValidationError) -> str:
    parts = []
    for err in e.errors():
        loc = ".".join(str(x) for x in err["loc"])
        flag = f"--{loc.replace('_', '-')}: " if loc else ""
        parts.append(f"{flag}{err['msg']}")
    return "usage error: " + "; ".join(parts)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    app = load_config(args.config_path)
    try:
        cfg = build_config(args, app)
    except ValidationError as e:
        print(_format_validation(e), file=sys.stderr)
        return 2
    return run(cfg, app)

# ⚠️ Reproducibility Notice:
# Defaults come from config.json only. There are no environment overrides:
# a run must be reproducible from the flags and config recorded in its output.

from __future__ import annotations
import json
from dataclasses import dataclass, asdict
from pathlib import Path


@dataclass
class Config:
    out_dir: str = "out"
    log_dir: str = "logs"
    max_workers: int = 1
    default_format: str = "parens"
    default_batch: int = 1
    verify_profile: str = "full"
    tv_samples: int = 1_000_000

    def to_dict(self) -> dict:
        return asdict(self)


_DEF = Config()


def load_config(path: str | Path = "config.json") -> Config:
    cfg = dict()
    p = Path(path)
    if p.exists():
        cfg = json.loads(p.read_text(encoding="utf-8"))

    # coerce types
    return Config(
        out_dir=str(cfg.get("out_dir", _DEF.out_dir)),
        log_dir=str(cfg.get("log_dir", _DEF.log_dir)),
        max_workers=max(1, int(cfg.get("max_workers", _DEF.max_workers))),
        default_format=str(cfg.get("default_format", _DEF.default_format)),
        default_batch=max(1, int(cfg.get("default_batch", _DEF.default_batch))),
        verify_profile=str(cfg.get("verify_profile", _DEF.verify_profile)),
        tv_samples=int(cfg.get("tv_samples", _DEF.tv_samples)),
    )

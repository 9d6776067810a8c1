# ⚠️ Reproducibility Notice:
# Append-only: never rewrite or delete ledger lines.
# Each record carries the full config, the seed and the SHA256 of the output,
# so any artifact can be traced back to the command that produced it.

from __future__ import annotations
import argparse, glob, hashlib, os
from datetime import datetime, timezone
from typing import Any, Dict, List

import pandas as pd

try:
    import jsonlines
except Exception as e:
    raise SystemExit(
        "Missing dependency 'jsonlines'. Add it to requirements.txt and reinstall."
    ) from e

LOG_DIR = "logs"
LEDGER_NAME = "gw_runs.jsonl"


# ---------- IO ----------
def load_jsonl(path: str) -> List[Dict[str, Any]]:
    """Load a JSONL file, skipping corrupted lines."""
    records = []
    if not os.path.exists(path):
        return records
    with jsonlines.open(path, "r") as reader:
        for obj in reader.iter(type=dict, skip_invalid=True):
            records.append(obj)
    return records


def sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(8192), b""):
            h.update(chunk)
    return h.hexdigest()


def log_run(
    subcommand: str,
    config: Dict[str, Any],
    exit_code: int,
    out_path: str | None = None,
    error: str | None = None,
    log_dir: str = LOG_DIR,
) -> Dict[str, Any]:
    """Append one record for a CLI invocation and return it."""
    record = {
        "ts": datetime.now(timezone.utc).isoformat(),
        "subcommand": subcommand,
        "seed": config.get("seed"),
        "exit_code": exit_code,
        "config": config,
        "output": out_path,
        "output_sha256": sha256_file(out_path) if out_path and os.path.exists(out_path) else None,
        "error": error,
    }
    os.makedirs(log_dir, exist_ok=True)
    with jsonlines.open(os.path.join(log_dir, LEDGER_NAME), "a") as writer:
        writer.write(record)
    return record


# ---------- Aggregation ----------
def summarize_runs(log_dir: str = LOG_DIR) -> pd.DataFrame:
    rows = []
    for fp in sorted(glob.glob(os.path.join(log_dir, "*.jsonl"))):
        for r in load_jsonl(fp):
            if "subcommand" not in r:
                continue
            rows.append(
                {
                    "ts": r.get("ts"),
                    "subcommand": r.get("subcommand"),
                    "seed": r.get("seed"),
                    "exit_code": r.get("exit_code"),
                    "output": r.get("output"),
                    "output_sha256": r.get("output_sha256"),
                    "_source_file": os.path.basename(fp),
                }
            )
    df = pd.DataFrame(rows, columns=["ts", "subcommand", "seed", "exit_code", "output", "output_sha256", "_source_file"])
    if not df.empty:
        df = df.sort_values(by="ts", kind="stable").reset_index(drop=True)
    return df


# ---------- CLI ----------
def _parse_args(argv=None):
    p = argparse.ArgumentParser(prog="run_ledger", description="Summarize the toolkit run ledger")
    p.add_argument("--log-dir", default=LOG_DIR)
    p.add_argument("--output_csv", default=None, help="Optional CSV path for the summary table")
    return p.parse_args(argv)


def main(argv=None):
    args = _parse_args(argv)
    df = summarize_runs(args.log_dir)
    if args.output_csv:
        os.makedirs(os.path.dirname(args.output_csv) or ".", exist_ok=True)
        df.to_csv(args.output_csv, index=False)
    else:
        print(df.to_string(index=False) if not df.empty else "(no runs recorded)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

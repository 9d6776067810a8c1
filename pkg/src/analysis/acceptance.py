# ⚠️ Reproducibility Notice:
# Every report carries the parameters and threshold it was judged against.
# Check seeds are derived from the run seed, one child stream per check.

"""
Acceptance checks run by `verify`.

Each check returns a CheckReport. The `full` profile uses the reference
sample sizes; `quick` runs the same code at smoke-test sizes with the
looser thresholds recorded in its reports.
"""

from __future__ import annotations
import itertools
import logging
import math
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np
import pandas as pd

from src.analysis.benchmark import linearity_ratio, time_sampler
from src.analysis.metrics import degree_profile_deviation, process_closeness, rescaled_height
from src.analysis.summary import EmpiricalSummary, two_sample_ks
from src.encodings.allocation import Allocation, cyclic_shift, degree_sequence, tree_from_degree_sequence
from src.encodings.paths import contour, dfs_walk, height_from_lukasiewicz, lukasiewicz, m_times
from src.encodings.tree import OrderedTree, all_ordered_trees, lukasiewicz_violation
from src.llt.local_limit import llt_table
from src.offspring.alpha_shift import alpha_shift, hat_shift
from src.offspring.distribution import OffspringDistribution
from src.sampler.algorithm_a import ConditionedTreeSampler, sample_batch
from src.sampler.exact import enumerate_exact
from src.sampler.rng import make_rng, spawn_streams
from src.utils.errors import AlphaInfeasible

logger = logging.getLogger(__name__)

SHIFT_TOL = 1e-10

PROFILES: dict[str, dict[str, Any]] = {
    "full": {
        "cycle_max_n": 7,
        "exhaustive_max_n": 8,
        "random_trees": 10_000,
        "random_n": 1000,
        "tv_samples": 1_000_000,
        "tv_threshold": 0.005,
        "profile_n": 100_000,
        "profile_trees": 50,
        "profile_threshold": 0.01,
        "height_n": 20_000,
        "height_trees": 2000,
        "height_threshold": 0.05,
        "closeness_ns": [1000, 10_000, 100_000],
        "closeness_trees": 200,
        "closeness_threshold": 0.45,
        "llt_Ns": [100, 400, 1600],
        "llt_threshold": 0.02,
        "bench_ns": [100_000, 500_000],
        "bench_repeats": 20,
        "bench_ratio": [4.0, 6.0],
        "bench_big_n": 1_000_000,
        "bench_big_seconds": 10.0,
    },
    "quick": {
        "cycle_max_n": 6,
        "exhaustive_max_n": 7,
        "random_trees": 200,
        "random_n": 500,
        "tv_samples": 50_000,
        "tv_threshold": 0.03,
        "profile_n": 20_000,
        "profile_trees": 10,
        "profile_threshold": 0.01,
        "height_n": 2000,
        "height_trees": 300,
        "height_threshold": 0.15,
        "closeness_ns": [500, 2000, 8000],
        "closeness_trees": 40,
        "closeness_threshold": 0.5,
        "llt_Ns": [100, 400, 1600],
        "llt_threshold": 0.02,
        "bench_ns": [20_000, 100_000],
        "bench_repeats": 5,
        "bench_ratio": [3.5, 6.5],
        "bench_big_n": 200_000,
        "bench_big_seconds": 10.0,
    },
}


@dataclass
class CheckReport:
    check: str
    parameters: dict
    statistic: float
    threshold: Any
    passed: bool
    # raw per-tree values behind the statistic, dumped by `verify --samples-dir`
    samples: pd.DataFrame | None = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "parameters": self.parameters,
            "statistic": float(self.statistic),
            "threshold": self.threshold,
            "pass": bool(self.passed),
        }


# ---------- helpers ----------
def encoding_violations(tree: OrderedTree) -> int:
    """Number of failed path identities for one tree."""
    bad = 0
    if tree_from_degree_sequence(degree_sequence(tree)) != tree:
        bad += 1
    h = tree.depths
    if not np.array_equal(height_from_lukasiewicz(lukasiewicz(tree)).values, h):
        bad += 1
    m = m_times(tree)
    if not np.array_equal(m, 2 * np.arange(tree.n) - h):
        bad += 1
    c = contour(tree).values
    if not np.array_equal(c, h[np.asarray(dfs_walk(tree))]):
        bad += 1
    # H(l+1) - 1 <= C(k) <= H(l) on [m(l), m(l+1))
    steps = np.arange(len(c))
    seg = np.searchsorted(m, steps, side="right") - 1
    h_next = np.append(h, 0)[seg + 1]
    if np.any(c > h[seg]) or np.any(c < h_next - 1):
        bad += 1
    return bad


def _allocations(n: int):
    # stars and bars: n - 1 balls into n boxes
    for bars in itertools.combinations(range(2 * n - 2), n - 1):
        edges = (-1,) + bars + (2 * n - 2,)
        yield [edges[i + 1] - edges[i] - 1 for i in range(n)]


def _tv_distance(w: OffspringDistribution, k: int, n: int, samples: int, seed: int | np.random.SeedSequence) -> float:
    exact = {t.key(): p for t, p in enumerate_exact(w, k, n)}
    sampler = ConditionedTreeSampler(w, k, n)
    rng = make_rng(seed)
    counts = Counter(sampler.sample(rng).tree.key() for _ in range(samples))
    keys = set(exact) | set(counts)
    return 0.5 * math.fsum(abs(counts.get(key, 0) / samples - exact.get(key, 0.0)) for key in keys)


# ---------- checks ----------
def check_shift_geometric(profile: dict, seed: int, workers: int) -> CheckReport:
    w = OffspringDistribution.geometric()
    worst = 0.0
    for a in (0.1, 0.25, 0.5, 0.9):
        s = alpha_shift(w, a)
        worst = max(
            worst,
            abs(s.t_star - 2 * a),
            abs(s.c - 4 * (1 - a) ** 2),
            abs(s.sigma_star_sq - 2 * a / (1 - a)),
        )
    return CheckReport("shift_geometric", {"alphas": [0.1, 0.25, 0.5, 0.9]}, worst, SHIFT_TOL, worst < SHIFT_TOL)


def check_shift_unary_binary(profile: dict, seed: int, workers: int) -> CheckReport:
    worst = 0.0
    rejected = True
    ps, alphas = (0.1, 0.2, 0.4), (0.05, 0.1, 0.25, 0.3, 0.45)
    for p in ps:
        w = OffspringDistribution.unary_binary(p)
        for a in alphas:
            s = alpha_shift(w, a)
            worst = max(
                worst,
                float(np.max(np.abs(s.w_star - [a, 1 - 2 * a, a]))),
                abs(s.sigma_star_sq - 2 * a),
            )
        for a in (0.5, 0.6):
            try:
                alpha_shift(w, a)
                rejected = False
            except AlphaInfeasible:
                pass
    params = {"p": list(ps), "alphas": list(alphas), "rejected_alphas": [0.5, 0.6], "all_rejected": rejected}
    return CheckReport("shift_unary_binary", params, worst, SHIFT_TOL, worst < SHIFT_TOL and rejected)


def check_shift_identity(profile: dict, seed: int, workers: int) -> CheckReport:
    families = [
        OffspringDistribution.geometric(),
        OffspringDistribution.unary_binary(0.2),
        OffspringDistribution.finite([0.3, 0.45, 0.2, 0.05]),
    ]
    worst = 0.0
    for w in families:
        s = alpha_shift(w, w.w0)
        base = w.weights_array(len(s.w_star) - 1)
        worst = max(worst, abs(s.t_star - 1), abs(s.c - 1), float(np.max(np.abs(s.w_star - base))))
    params = {"families": [w.describe() for w in families]}
    return CheckReport("shift_identity", params, worst, SHIFT_TOL, worst < SHIFT_TOL)


def check_cycle_lemma(profile: dict, seed: int, workers: int) -> CheckReport:
    max_n = profile["cycle_max_n"]
    bad = checked = 0
    for n in range(1, max_n + 1):
        for y in _allocations(n):
            checked += 1
            valid = [r for r in range(n) if lukasiewicz_violation(np.roll(y, -r)) is None]
            rotated, _ = cyclic_shift(Allocation(y))
            if len(valid) != 1 or not np.array_equal(rotated.y, np.roll(y, -valid[0])):
                bad += 1
    return CheckReport("cycle_lemma", {"max_n": max_n, "allocations": checked}, float(bad), 0, bad == 0)


def check_encodings(profile: dict, seed: int, workers: int) -> CheckReport:
    bad = exhaustive = 0
    for n in range(1, profile["exhaustive_max_n"] + 1):
        for degrees in all_ordered_trees(n):
            exhaustive += 1
            bad += encoding_violations(OrderedTree(degrees))
    n = profile["random_n"]
    w = OffspringDistribution.geometric()
    results = sample_batch(w, n // 4, n, profile["random_trees"], seed, max_workers=workers)
    for r in results:
        bad += encoding_violations(r.tree)
    params = {
        "exhaustive_max_n": profile["exhaustive_max_n"],
        "exhaustive_trees": exhaustive,
        "random_trees": len(results),
        "random_n": n,
    }
    return CheckReport("encodings", params, float(bad), 0, bad == 0)


def check_sampler_exactness(profile: dict, seed: int, workers: int) -> CheckReport:
    cases = [
        (OffspringDistribution.geometric(), 2, 4),
        (OffspringDistribution.geometric(), 3, 6),
        (OffspringDistribution.unary_binary(0.2), 3, 6),
    ]
    samples = profile["tv_samples"]
    tvs = {}
    for (w, k, n), stream in zip(cases, spawn_streams(seed, len(cases))):
        tvs[f"{w.describe()} k={k} n={n}"] = _tv_distance(w, k, n, samples, stream)
    worst = max(tvs.values())
    thr = profile["tv_threshold"]
    return CheckReport("sampler_exactness", {"samples": samples, "tv": tvs}, worst, thr, worst < thr)


def check_degree_profile(profile: dict, seed: int, workers: int) -> CheckReport:
    n, count = profile["profile_n"], profile["profile_trees"]
    cases = [(OffspringDistribution.unary_binary(0.2), 0.3), (OffspringDistribution.geometric(), 0.25)]
    devs = {}
    for (w, a), stream in zip(cases, spawn_streams(seed, len(cases))):
        k = int(round(a * n))
        results = sample_batch(w, k, n, count, int(stream.generate_state(1)[0]), alpha=a, max_workers=workers)
        devs[f"{w.describe()} alpha={a}"] = degree_profile_deviation([r.tree for r in results], alpha_shift(w, a))
    worst = max(devs.values())
    thr = profile["profile_threshold"]
    return CheckReport("degree_profile", {"n": n, "trees": count, "deviation": devs}, worst, thr, worst < thr)


def check_height_universality(profile: dict, seed: int, workers: int) -> CheckReport:
    n, count, a = profile["height_n"], profile["height_trees"], 0.3
    k = int(round(a * n))
    families = [OffspringDistribution.geometric(), OffspringDistribution.unary_binary(0.2)]
    summaries, frames = [], []
    for w, stream in zip(families, spawn_streams(seed, len(families))):
        sigma = alpha_shift(w, a).sigma_star
        results = sample_batch(w, k, n, count, int(stream.generate_state(1)[0]), alpha=a, max_workers=workers)
        values = [rescaled_height(r.tree, sigma) for r in results]
        summaries.append(EmpiricalSummary.from_values(values))
        frames.append(pd.DataFrame({"family": w.describe(), "rescaled_height": values}))
    ks = two_sample_ks(*summaries)
    thr = profile["height_threshold"]
    params = {"n": n, "trees": count, "alpha": a, "means": [s.mean for s in summaries]}
    return CheckReport("height_universality", params, ks, thr, ks < thr, pd.concat(frames, ignore_index=True))


def check_closeness_exponent(profile: dict, seed: int, workers: int) -> CheckReport:
    w, a = OffspringDistribution.geometric(), 0.25
    sigma_sq = alpha_shift(w, a).sigma_star_sq
    ns, count = profile["closeness_ns"], profile["closeness_trees"]
    medians, frames = [], []
    for n, stream in zip(ns, spawn_streams(seed, len(ns))):
        results = sample_batch(w, int(round(a * n)), n, count, int(stream.generate_state(1)[0]), alpha=a, max_workers=workers)
        values = [process_closeness(r.tree, sigma_sq).sup_SH for r in results]
        medians.append(EmpiricalSummary.from_values(values).median)
        frames.append(pd.DataFrame({"n": n, "sup_SH": values}))
    slope = float(np.polyfit(np.log(ns), np.log(medians), 1)[0])
    thr = profile["closeness_threshold"]
    params = {"ns": ns, "trees": count, "medians": medians}
    return CheckReport("closeness_exponent", params, slope, thr, slope < thr, pd.concat(frames, ignore_index=True))


def check_llt(profile: dict, seed: int, workers: int) -> CheckReport:
    base = hat_shift(alpha_shift(OffspringDistribution.geometric(), 0.25))
    table = llt_table(base, profile["llt_Ns"])
    errors = table["sup_error"].tolist()
    decreasing = all(b < a for a, b in zip(errors, errors[1:]))
    thr = profile["llt_threshold"]
    params = {"N": profile["llt_Ns"], "A_N": table["A_N"].tolist(), "sup_error": errors, "decreasing": decreasing}
    return CheckReport("llt", params, errors[-1], thr, decreasing and errors[-1] < thr)


def check_runtime_linearity(profile: dict, seed: int, workers: int) -> CheckReport:
    w, a = OffspringDistribution.geometric(), 0.25
    n_lo, n_hi = profile["bench_ns"]
    frame = time_sampler(w, a, [n_lo, n_hi], profile["bench_repeats"], seed)
    ratio = linearity_ratio(frame, n_lo, n_hi)

    big = profile["bench_big_n"]
    sampler = ConditionedTreeSampler(w, int(round(a * big)), big, alpha=a)
    t0 = time.perf_counter()
    sampler.sample(make_rng(seed))
    big_seconds = time.perf_counter() - t0

    lo, hi = profile["bench_ratio"]
    params = {
        "n": [n_lo, n_hi],
        "repeats": profile["bench_repeats"],
        "mean_seconds": frame["mean_seconds"].tolist(),
        "big_n": big,
        "big_seconds": big_seconds,
        "big_limit_seconds": profile["bench_big_seconds"],
    }
    passed = lo <= ratio <= hi and big_seconds < profile["bench_big_seconds"]
    return CheckReport("runtime_linearity", params, ratio, [lo, hi], passed)


CHECKS: dict[str, Callable[[dict, int, int], CheckReport]] = {
    "shift_geometric": check_shift_geometric,
    "shift_unary_binary": check_shift_unary_binary,
    "shift_identity": check_shift_identity,
    "cycle_lemma": check_cycle_lemma,
    "encodings": check_encodings,
    "sampler_exactness": check_sampler_exactness,
    "degree_profile": check_degree_profile,
    "height_universality": check_height_universality,
    "closeness_exponent": check_closeness_exponent,
    "llt": check_llt,
    "runtime_linearity": check_runtime_linearity,
}


def run_checks(
    names: list[str] | None,
    profile: str,
    seed: int,
    workers: int = 1,
    overrides: dict | None = None,
) -> list[CheckReport]:
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose from {sorted(PROFILES)}")
    sizes = {**PROFILES[profile], **(overrides or {})}
    selected = list(CHECKS) if not names else names
    unknown = [n for n in selected if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {unknown}")
    # one stream per registered check, so a subset run reuses the same seeds
    seeds = {
        name: int(s.generate_state(1)[0])
        for name, s in zip(CHECKS, spawn_streams(seed, len(CHECKS)))
    }
    reports = []
    for name in selected:
        t0 = time.perf_counter()
        report = CHECKS[name](sizes, seeds[name], workers)
        report.parameters["profile"] = profile
        logger.info(
            "check %s: statistic=%s threshold=%s pass=%s (%.1fs)",
            name, report.statistic, report.threshold, report.passed, time.perf_counter() - t0,
        )
        reports.append(report)
    return reports

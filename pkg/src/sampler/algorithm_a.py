# ⚠️ Reproducibility Notice:
# A sampler plan is fixed by (w, k, n, alpha). Draws depend only on the RNG
# stream passed in; batches give sample i stream i regardless of max_workers.

"""
Exact sampler for Galton-Watson trees conditioned on n vertices and k leaves.

Pipeline per draw:
  1. n - k internal child counts from a multinomial over the shifted
     part-size law, conditioned on summing to n - 1;
  2. append k zeros and shuffle uniformly;
  3. rotate with the cycle lemma;
  4. decode the rotated sequence into a tree.
"""

from __future__ import annotations
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from src.encodings.allocation import Allocation, cyclic_shift, tree_from_degree_sequence
from src.encodings.tree import OrderedTree
from src.offspring.alpha_shift import AlphaShift, alpha_shift, hat_shift
from src.offspring.distribution import OffspringDistribution, alpha_range, validate
from src.sampler.feasibility import feasible
from src.sampler.multinomial import conditioned_multinomial, default_max_rejections
from src.sampler.rng import RNG_ALGORITHM, make_rng, spawn_streams
from src.utils.errors import AlphaInfeasible, Infeasible

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SampleConfig:
    w: OffspringDistribution
    k: int
    n: int
    seed: int
    max_rejections: int | None = None
    alpha: float | None = None


@dataclass(frozen=True, eq=False)
class SampleResult:
    tree: OrderedTree
    bridge: Allocation  # shuffled sequence before the cyclic shift
    shift_index: int
    attempts: int


def _in_alpha_range(w: OffspringDistribution, alpha: float) -> bool:
    lo, hi = alpha_range(w)
    return alpha == w.w0 or lo < alpha < hi


class ConditionedTreeSampler:
    """Prepared plan for repeated draws from the law on trees with (k, n)."""

    def __init__(
        self,
        w: OffspringDistribution,
        k: int,
        n: int,
        alpha: float | None = None,
        max_rejections: int | None = None,
    ):
        validate(w)
        if not feasible(w, k, n):
            raise Infeasible(f"(k={k}, n={n}) has probability zero under {w.describe()}")
        self.w = w
        self.k = k
        self.n = n
        self.parts = n - k
        self.target = n - 1
        self.max_rejections = max_rejections or default_max_rejections(n)
        self.shift: AlphaShift | None = None
        self.hat_w: np.ndarray | None = None
        self.forced_degree: int | None = None
        self.alpha: float | None = None

        if self.parts == 0:
            self.alpha_source = "single-vertex"
            return
        self.forced_degree = self._forced_degree()
        if self.forced_degree is not None:
            self.alpha_source = "forced"
            logger.info("every internal vertex has %d children for (k=%d, n=%d)", self.forced_degree, k, n)
            return

        self.alpha, self.alpha_source = self._choose_alpha(alpha)
        self.shift = alpha_shift(w, self.alpha)
        self.hat_w = hat_shift(self.shift)

    def _forced_degree(self) -> int | None:
        if self.parts == 1:
            return self.target
        if self.target % self.parts:
            return None
        mean = self.target // self.parts
        if mean == self.w.min_positive_degree or mean == self.w.max_degree:
            return mean
        return None

    def _choose_alpha(self, override: float | None) -> tuple[float, str]:
        if override is not None:
            if not _in_alpha_range(self.w, override):
                lo, hi = alpha_range(self.w)
                raise AlphaInfeasible(f"alpha={override} outside ({lo:.6g}, {hi:.6g}) for {self.w.describe()}")
            return float(override), "override"
        ratio = self.k / self.n
        if _in_alpha_range(self.w, ratio):
            return ratio, "k/n"
        matched = (self.k - 1) / (self.n - 1)
        logger.warning(
            "alpha=k/n=%.6g is not solvable for %s; using (k-1)/(n-1)=%.6g",
            ratio, self.w.describe(), matched,
        )
        return matched, "(k-1)/(n-1)"

    def _internal_counts(self, rng: np.random.Generator) -> tuple[np.ndarray, int]:
        if self.forced_degree is not None:
            return np.full(self.parts, self.forced_degree, dtype=np.int64), 0
        draw = conditioned_multinomial(self.hat_w, self.parts, self.target, rng, self.max_rejections)
        return draw.expand(), draw.attempts

    def sample(self, rng: np.random.Generator) -> SampleResult:
        if self.parts == 0:
            single = Allocation(np.zeros(1, dtype=np.int64))
            return SampleResult(OrderedTree([0]), single, 0, 0)
        internal, attempts = self._internal_counts(rng)
        xi = np.concatenate((internal, np.zeros(self.k, dtype=np.int64)))
        rng.shuffle(xi)
        bridge = Allocation(xi)
        rotated, index = cyclic_shift(bridge)
        return SampleResult(tree_from_degree_sequence(rotated), bridge, index, attempts)

    def describe(self) -> dict:
        out = {
            "distribution": self.w.to_dict(),
            "k": self.k,
            "n": self.n,
            "alpha": self.alpha,
            "alpha_source": self.alpha_source,
            "forced_degree": self.forced_degree,
            "max_rejections": self.max_rejections,
        }
        if self.shift is not None:
            out.update(
                t_star=self.shift.t_star,
                c=self.shift.c,
                sigma_star_sq=self.shift.sigma_star_sq,
                truncated_at=self.shift.truncated_at,
            )
        return out


def sample_tree(cfg: SampleConfig) -> OrderedTree:
    sampler = ConditionedTreeSampler(cfg.w, cfg.k, cfg.n, cfg.alpha, cfg.max_rejections)
    return sampler.sample(make_rng(cfg.seed)).tree


def _sample_chunk(args: tuple) -> list[SampleResult]:
    w, k, n, alpha, max_rejections, streams = args
    sampler = ConditionedTreeSampler(w, k, n, alpha, max_rejections)
    return [sampler.sample(make_rng(s)) for s in streams]


def sample_batch(
    w: OffspringDistribution,
    k: int,
    n: int,
    count: int,
    seed: int,
    alpha: float | None = None,
    max_workers: int = 1,
    max_rejections: int | None = None,
) -> list[SampleResult]:
    """`count` independent draws; sample i uses child stream i of `seed`."""
    streams = spawn_streams(seed, count)
    t0 = time.perf_counter()
    if max_workers <= 1 or count < 2:
        results = _sample_chunk((w, k, n, alpha, max_rejections, streams))
    else:
        size = -(-count // max_workers)
        chunks = [streams[i : i + size] for i in range(0, count, size)]
        results = []
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            for part in pool.map(_sample_chunk, [(w, k, n, alpha, max_rejections, c) for c in chunks]):
                results.extend(part)
    logger.info(
        "sampled %d trees (k=%d, n=%d) with %d worker(s) in %.3fs",
        count, k, n, max_workers, time.perf_counter() - t0,
    )
    return results


def batch_metadata(sampler: ConditionedTreeSampler, seed: int, results: list[SampleResult]) -> dict:
    attempts = [r.attempts for r in results]
    meta = sampler.describe()
    meta.update(
        seed=seed,
        rng=RNG_ALGORITHM,
        count=len(results),
        rejection_attempts={
            "total": int(sum(attempts)),
            "max": int(max(attempts)) if attempts else 0,
        },
    )
    return meta

"""Tests for feasibility, the conditioned multinomial and the exact tree sampler."""

import itertools
import logging
from collections import Counter

import numpy as np
import pytest

from src.offspring.alpha_shift import alpha_shift, hat_shift
from src.offspring.distribution import OffspringDistribution
from src.sampler.algorithm_a import (
    ConditionedTreeSampler,
    SampleConfig,
    batch_metadata,
    sample_batch,
    sample_tree,
)
from src.sampler.exact import MAX_EXACT_N, enumerate_exact
from src.sampler.feasibility import feasible, reachable_sums
from src.sampler.multinomial import conditioned_multinomial, default_max_rejections
from src.sampler.rng import RNG_ALGORITHM, fresh_seed, make_rng, spawn_streams
from src.utils.errors import (
    AlphaInfeasible,
    EmptySet,
    Infeasible,
    RejectionBudgetExceeded,
    TooLarge,
)

GEOMETRIC_2_4 = {(2, 1, 0, 0), (2, 0, 1, 0), (1, 2, 0, 0)}


def _three_only():
    """Law with w0 = 2/3, w3 = 1/3: only full ternary trees."""
    return OffspringDistribution.finite([2 / 3, 0.0, 0.0, 1 / 3])


class TestRng:
    def test_same_seed_same_stream(self):
        assert make_rng(5).integers(0, 1 << 30, 4).tolist() == make_rng(5).integers(0, 1 << 30, 4).tolist()

    def test_spawned_streams_differ(self):
        a, b = spawn_streams(5, 2)
        assert make_rng(a).random() != make_rng(b).random()

    def test_fresh_seed_fits_63_bits(self):
        assert 0 <= fresh_seed() < 2**63


class TestFeasible:
    def test_examples(self, geometric, unary_binary):
        assert feasible(unary_binary, 4, 7)
        assert not feasible(unary_binary, 5, 8)
        assert feasible(geometric, 3, 6)
        assert feasible(geometric, 1, 1)

    def test_out_of_range(self, geometric):
        assert not feasible(geometric, 0, 3)
        assert not feasible(geometric, 4, 3)
        assert not feasible(geometric, 3, 3)

    def test_ternary_law(self):
        w = _three_only()
        assert feasible(w, 3, 4)
        assert feasible(w, 5, 7)
        assert not feasible(w, 2, 4)
        assert not feasible(w, 1, 2)

    @pytest.mark.parametrize("w", [OffspringDistribution.unary_binary(0.2), _three_only(), OffspringDistribution.finite([0.3, 0.45, 0.2, 0.05])])
    def test_agrees_with_enumeration(self, w):
        for n in range(1, 9):
            for k in range(1, n + 1):
                try:
                    nonempty = bool(enumerate_exact(w, k, n))
                except EmptySet:
                    nonempty = False
                assert feasible(w, k, n) == nonempty, (k, n)

    def test_reachable_sums(self):
        mask = reachable_sums([0, 2], 3, 6)
        assert np.flatnonzero(mask).tolist() == [0, 2, 4, 6]


class TestConditionedMultinomial:
    def test_constraints(self, geometric):
        hw = hat_shift(alpha_shift(geometric, 0.5))
        rng = make_rng(11)
        for _ in range(200):
            draw = conditioned_multinomial(hw, 3, 5, rng)
            assert draw.counts.sum() == 3
            assert int(draw.counts @ np.arange(len(draw.counts))) == 5
            assert draw.attempts >= 1
            assert sorted(draw.expand().tolist()) == draw.expand().tolist()

    def test_single_part_is_forced(self):
        draw = conditioned_multinomial(np.array([0.0, 0.5, 0.5]), 1, 1, make_rng(0))
        assert draw.counts.tolist() == [0, 1, 0]
        assert draw.expand().tolist() == [1]

    def test_conditional_law(self):
        # (0, 2) and (1, 1) are equally likely once conditioned on summing to 2
        hw = np.array([1.0, np.sqrt(2.0), 1.0])
        rng = make_rng(2024)
        draws = 20_000
        hits = sum(conditioned_multinomial(hw, 2, 2, rng).counts[1] == 2 for _ in range(draws))
        assert hits / draws == pytest.approx(0.5, abs=0.02)

    def test_geometric_half_matches_enumeration(self, geometric):
        # exact law of the sorted parts, summed over compositions of 5 into 3 parts
        hw = hat_shift(alpha_shift(geometric, 0.5))
        parts, target = 3, 5
        support = [c for c in itertools.product(range(target + 1), repeat=parts) if sum(c) == target]
        weights = {}
        for c in support:
            key = tuple(sorted(c))
            weights[key] = weights.get(key, 0.0) + float(np.prod(hw[list(c)]))
        total = sum(weights.values())
        exact = {key: wt / total for key, wt in weights.items()}

        rng = make_rng(77)
        draws = 20_000
        counts = Counter(tuple(conditioned_multinomial(hw, parts, target, rng).expand().tolist()) for _ in range(draws))
        assert set(counts) <= set(exact)
        tv = 0.5 * sum(abs(counts.get(key, 0) / draws - p) for key, p in exact.items())
        assert tv < 0.02

    def test_budget_exceeded(self):
        with pytest.raises(RejectionBudgetExceeded):
            conditioned_multinomial(np.array([0.0, 1.0]), 2, 3, make_rng(0), max_rejections=10)

    def test_default_budget(self):
        assert default_max_rejections(100) == 10_000
        assert default_max_rejections(101) == 11_000


class TestEnumerateExact:
    def test_geometric_two_four(self, geometric):
        exact = enumerate_exact(geometric, 2, 4)
        assert {t.key() for t, _ in exact} == GEOMETRIC_2_4
        for _, p in exact:
            assert p == pytest.approx(1 / 3)

    def test_path_on_two_vertices(self, unary_binary):
        exact = enumerate_exact(unary_binary, 1, 2)
        assert [(t.key(), p) for t, p in exact] == [((1, 0), 1.0)]

    def test_full_binary_trees(self, unary_binary):
        exact = enumerate_exact(unary_binary, 4, 7)
        assert len(exact) == 5
        assert all(p == pytest.approx(0.2) for _, p in exact)

    def test_probabilities_sum_to_one(self, cubic):
        assert sum(p for _, p in enumerate_exact(cubic, 4, 8)) == pytest.approx(1.0, abs=1e-12)

    def test_errors(self, geometric, unary_binary):
        with pytest.raises(TooLarge):
            enumerate_exact(geometric, 3, MAX_EXACT_N + 1)
        with pytest.raises(EmptySet):
            enumerate_exact(unary_binary, 5, 8)


class TestConditionedTreeSampler:
    def test_single_vertex(self, cubic):
        sampler = ConditionedTreeSampler(cubic, 1, 1)
        assert sampler.alpha_source == "single-vertex"
        assert sampler.sample(make_rng(0)).tree.key() == (0,)

    def test_alpha_sources(self, geometric, unary_binary):
        assert ConditionedTreeSampler(geometric, 2, 4).alpha_source == "k/n"
        assert ConditionedTreeSampler(geometric, 2, 4).alpha == 0.5
        assert ConditionedTreeSampler(unary_binary, 4, 7).alpha_source == "forced"
        assert ConditionedTreeSampler(geometric, 5, 20, alpha=0.3).alpha_source == "override"

    def test_fallback_alpha_is_logged(self, unary_binary, caplog):
        with caplog.at_level(logging.WARNING, logger="src.sampler.algorithm_a"):
            sampler = ConditionedTreeSampler(unary_binary, 3, 6)
        assert sampler.alpha_source == "(k-1)/(n-1)"
        assert sampler.alpha == pytest.approx(0.4)
        assert any("not solvable" in r.getMessage() for r in caplog.records)

    def test_one_internal_vertex_is_the_star(self, geometric):
        n = 200_000
        sampler = ConditionedTreeSampler(geometric, n - 1, n)
        assert sampler.alpha_source == "forced"
        assert sampler.forced_degree == n - 1
        assert sampler.hat_w is None
        r = sampler.sample(make_rng(6))
        assert r.attempts == 0
        assert r.tree.degrees[0] == n - 1
        assert r.tree.height == 1

    def test_infeasible(self, unary_binary):
        with pytest.raises(Infeasible):
            ConditionedTreeSampler(unary_binary, 5, 8)

    def test_override_outside_range(self, unary_binary):
        with pytest.raises(AlphaInfeasible):
            ConditionedTreeSampler(unary_binary, 3, 6, alpha=0.6)

    def test_shape_of_every_draw(self, geometric, cubic):
        for w, k, n in ((geometric, 25, 100), (cubic, 40, 120)):
            sampler = ConditionedTreeSampler(w, k, n)
            rng = make_rng(99)
            for _ in range(50):
                tree = sampler.sample(rng).tree
                assert tree.n == n
                assert tree.leaf_count == k

    def test_bridge_rotates_to_tree(self, geometric):
        sampler = ConditionedTreeSampler(geometric, 5, 20)
        rng = make_rng(4)
        for _ in range(100):
            r = sampler.sample(rng)
            assert np.array_equal(np.roll(r.bridge.y, -r.shift_index), r.tree.degrees)
            assert sorted(r.bridge.y.tolist()) == sorted(r.tree.degrees.tolist())

    def test_describe(self, geometric):
        d = ConditionedTreeSampler(geometric, 25, 100).describe()
        assert d["alpha"] == 0.25
        assert d["t_star"] == pytest.approx(0.5, abs=1e-10)
        assert d["distribution"] == {"kind": "geometric"}


class TestSampleTree:
    def test_geometric_two_four(self, geometric):
        tree = sample_tree(SampleConfig(geometric, 2, 4, seed=7))
        assert tree.key() in GEOMETRIC_2_4

    def test_single_vertex(self, unary_binary):
        assert sample_tree(SampleConfig(unary_binary, 1, 1, seed=0)).n == 1

    def test_deterministic(self, geometric):
        cfg = SampleConfig(geometric, 50, 200, seed=3)
        assert sample_tree(cfg) == sample_tree(cfg)

    def test_geometric_two_four_is_uniform(self, geometric):
        sampler = ConditionedTreeSampler(geometric, 2, 4)
        rng = make_rng(17)
        counts = Counter(sampler.sample(rng).tree.key() for _ in range(6000))
        assert set(counts) == GEOMETRIC_2_4
        for c in counts.values():
            assert abs(c - 2000) < 200

    def test_full_binary_shapes_are_uniform(self, unary_binary):
        sampler = ConditionedTreeSampler(unary_binary, 4, 7)
        rng = make_rng(18)
        counts = Counter(sampler.sample(rng).tree.key() for _ in range(5000))
        assert len(counts) == 5
        for c in counts.values():
            assert abs(c - 1000) < 150


@pytest.mark.slow
class TestExactness:
    @pytest.mark.parametrize(
        "w,k,n",
        [
            (OffspringDistribution.geometric(), 2, 4),
            (OffspringDistribution.geometric(), 3, 6),
            (OffspringDistribution.unary_binary(0.2), 3, 6),
        ],
    )
    def test_total_variation(self, w, k, n):
        samples = 100_000
        exact = {t.key(): p for t, p in enumerate_exact(w, k, n)}
        sampler = ConditionedTreeSampler(w, k, n)
        rng = make_rng(20240601)
        counts = Counter(sampler.sample(rng).tree.key() for _ in range(samples))
        assert set(counts) <= set(exact)
        tv = 0.5 * sum(abs(counts.get(key, 0) / samples - p) for key, p in exact.items())
        assert tv < 0.015


class TestSampleBatch:
    def test_worker_count_does_not_change_results(self, geometric):
        one = sample_batch(geometric, 5, 20, 6, seed=123, max_workers=1)
        two = sample_batch(geometric, 5, 20, 6, seed=123, max_workers=2)
        assert [r.tree.key() for r in one] == [r.tree.key() for r in two]

    def test_sample_i_uses_stream_i(self, geometric):
        batch = sample_batch(geometric, 5, 20, 3, seed=8)
        sampler = ConditionedTreeSampler(geometric, 5, 20)
        third = sampler.sample(make_rng(spawn_streams(8, 3)[2]))
        assert batch[2].tree == third.tree

    def test_metadata(self, geometric):
        sampler = ConditionedTreeSampler(geometric, 5, 20)
        results = sample_batch(geometric, 5, 20, 4, seed=1)
        meta = batch_metadata(sampler, 1, results)
        assert meta["seed"] == 1
        assert meta["rng"] == RNG_ALGORITHM
        assert meta["count"] == 4
        assert meta["rejection_attempts"]["total"] == sum(r.attempts for r in results)
        assert meta["rejection_attempts"]["max"] >= 1
        assert meta["k"] == 5 and meta["n"] == 20

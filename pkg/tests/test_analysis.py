"""Tests for the Monte Carlo statistics and the acceptance harness."""

import math

import numpy as np
import pytest

from src.analysis.acceptance import CHECKS, PROFILES, CheckReport, encoding_violations, run_checks
from src.analysis.benchmark import linearity_ratio, time_sampler
from src.analysis.metrics import (
    degree_profile,
    degree_profile_deviation,
    process_closeness,
    rescaled_contour_max,
    rescaled_height,
)
from src.analysis.summary import EmpiricalSummary, two_sample_ks
from src.encodings.tree import OrderedTree, all_ordered_trees
from src.offspring.alpha_shift import alpha_shift
from src.sampler.algorithm_a import sample_batch
from src.utils.errors import EmptyBatch, MixedBatch


class TestEmpiricalSummary:
    def test_from_values_sorts(self):
        s = EmpiricalSummary.from_values([3.0, 1.0, 2.0], metadata={"n": 3})
        assert s.values.tolist() == [1.0, 2.0, 3.0]
        assert s.samples == 3
        assert s.mean == pytest.approx(2.0)
        assert s.median == pytest.approx(2.0)
        assert s.metadata == {"n": 3}

    def test_from_histogram(self):
        s = EmpiricalSummary.from_histogram([2, 3, 5])
        assert s.samples == 10
        assert s.mean == pytest.approx(1.3)
        assert s.variance == pytest.approx(0.61)
        assert s.to_frame()["count"].tolist() == [2, 3, 5]

    def test_quantile_needs_values(self):
        with pytest.raises(EmptyBatch):
            EmpiricalSummary.from_histogram([1, 1]).quantile(0.5)


class TestTwoSampleKs:
    def test_identical(self):
        a = EmpiricalSummary.from_values([0.1, 0.5, 0.7])
        assert two_sample_ks(a, a) == 0.0

    def test_disjoint(self):
        assert two_sample_ks(EmpiricalSummary.from_values([0.0]), EmpiricalSummary.from_values([1.0])) == 1.0

    def test_shifted_grid(self):
        grid = np.linspace(0.0, 1.0, 1000)
        ks = two_sample_ks(EmpiricalSummary.from_values(grid), EmpiricalSummary.from_values(grid + 0.05))
        assert ks == pytest.approx(0.05, abs=0.002)

    def test_ties_match_pooled_cdf_gap(self):
        rng = np.random.default_rng(12)
        a = rng.integers(0, 6, 300).astype(float)
        b = rng.integers(1, 7, 200).astype(float)
        grid = np.arange(8.0)
        fa = (a[:, None] <= grid).mean(axis=0)
        fb = (b[:, None] <= grid).mean(axis=0)
        ks = two_sample_ks(EmpiricalSummary.from_values(a), EmpiricalSummary.from_values(b))
        assert ks == pytest.approx(np.abs(fa - fb).max(), abs=1e-12)

    def test_empty(self):
        with pytest.raises(EmptyBatch):
            two_sample_ks(EmpiricalSummary.from_values([]), EmpiricalSummary.from_values([1.0]))


class TestDegreeProfile:
    def test_reference_tree(self, reference_tree):
        np.testing.assert_allclose(degree_profile([reference_tree]), [0.5, 0.25, 0.125, 0.125])

    def test_single_vertex_batch(self, geometric):
        trees = [OrderedTree([0])] * 3
        assert degree_profile_deviation(trees, alpha_shift(geometric, geometric.w0)) == pytest.approx(0.5)

    def test_errors(self, reference_tree):
        with pytest.raises(EmptyBatch):
            degree_profile([])
        with pytest.raises(MixedBatch):
            degree_profile([OrderedTree([0]), reference_tree])

    def test_matches_shifted_law(self, geometric):
        shift = alpha_shift(geometric, 0.25)
        trees = [r.tree for r in sample_batch(geometric, 500, 2000, 20, seed=31, alpha=0.25)]
        assert degree_profile_deviation(trees, shift) < 0.02


class TestRescaledHeight:
    def test_examples(self, reference_tree):
        assert rescaled_height(OrderedTree([0]), 1.3) == 0.0
        assert rescaled_height(OrderedTree([1, 1, 1, 1, 0]), 2.0) == pytest.approx(4 / math.sqrt(5))
        assert rescaled_height(reference_tree, 1.0) == pytest.approx(3 / (2 * math.sqrt(8)))

    def test_contour_maximum_is_the_height(self):
        for n in range(1, 8):
            for degrees in all_ordered_trees(n):
                t = OrderedTree(degrees)
                assert rescaled_contour_max(t, 1.0) == rescaled_height(t, 1.0)


class TestProcessCloseness:
    def test_single_vertex(self):
        c = process_closeness(OrderedTree([0]), 1.0)
        assert (c.sup_SH, c.sup_SC, c.sup_tau) == (0.0, 0.0, 0.0)

    def test_star(self):
        c = process_closeness(OrderedTree([4, 0, 0, 0, 0]), 2.0)
        assert c.sup_SH == 2.0
        assert c.sup_SC == 3.0

    def test_reference_tree(self, reference_tree):
        c = process_closeness(reference_tree, 2.0)
        assert c.sup_SH == 2.0
        assert c.sup_tau == 1.5

    def test_tau_within_half_height(self):
        for n in range(1, 8):
            for degrees in all_ordered_trees(n):
                t = OrderedTree(degrees)
                assert process_closeness(t, 1.0).sup_tau <= t.height / 2


class TestBenchmark:
    def test_time_sampler_frame(self, geometric):
        frame = time_sampler(geometric, 0.25, [400, 800], repeats=2, seed=0)
        assert list(frame.columns) == ["n", "k", "repeats", "mean_seconds", "max_seconds"]
        assert frame["k"].tolist() == [100, 200]
        assert (frame["max_seconds"] >= frame["mean_seconds"]).all()
        assert linearity_ratio(frame, 400, 800) > 0


class TestAcceptance:
    def test_registry(self):
        assert len(CHECKS) == 11
        assert set(PROFILES) == {"full", "quick"}

    def test_report_uses_pass_key(self):
        d = CheckReport("x", {}, 0.1, 0.2, True).to_dict()
        assert d["pass"] is True
        assert "passed" not in d

    def test_fast_checks_pass(self):
        names = ["shift_geometric", "shift_unary_binary", "shift_identity", "cycle_lemma", "llt"]
        reports = run_checks(names, "quick", seed=1)
        assert [r.check for r in reports] == names
        for r in reports:
            assert r.passed, r.to_dict()
            assert r.parameters["profile"] == "quick"

    def test_encodings_check_with_overrides(self):
        overrides = {"exhaustive_max_n": 6, "random_trees": 20, "random_n": 200}
        (report,) = run_checks(["encodings"], "quick", seed=5, overrides=overrides)
        assert report.passed
        assert report.parameters["exhaustive_trees"] == 1 + 1 + 2 + 5 + 14 + 42

    def test_encoding_violations_reference(self, reference_tree):
        assert encoding_violations(reference_tree) == 0

    def test_subset_reuses_seed(self):
        overrides = {"exhaustive_max_n": 3, "random_trees": 3, "random_n": 40}
        a = run_checks(["encodings"], "quick", seed=9, overrides=overrides)[0]
        b = run_checks(["shift_identity", "encodings"], "quick", seed=9, overrides=overrides)[1]
        assert a.to_dict() == b.to_dict()

    def test_runtime_report_shape(self):
        overrides = {"bench_ns": [2000, 4000], "bench_repeats": 2, "bench_big_n": 4000}
        (report,) = run_checks(["runtime_linearity"], "quick", seed=3, overrides=overrides)
        assert report.threshold == [3.5, 6.5]
        assert report.statistic > 0
        assert report.parameters["big_n"] == 4000

    def test_height_check_keeps_raw_samples(self):
        overrides = {"height_n": 200, "height_trees": 30}
        (report,) = run_checks(["height_universality"], "quick", seed=4, overrides=overrides)
        assert list(report.samples.columns) == ["family", "rescaled_height"]
        assert len(report.samples) == 60
        assert 0.0 <= report.statistic <= 1.0
        assert "samples" not in report.to_dict()

    def test_unknown_names(self):
        with pytest.raises(ValueError):
            run_checks(["nope"], "quick", seed=1)
        with pytest.raises(ValueError):
            run_checks(None, "medium", seed=1)

    @pytest.mark.slow
    def test_sampler_exactness_quick(self):
        (report,) = run_checks(["sampler_exactness"], "quick", seed=2, overrides={"tv_samples": 20_000})
        assert report.passed

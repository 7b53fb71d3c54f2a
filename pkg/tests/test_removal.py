from collections import Counter
from random import Random

import pytest
from scipy.stats import chisquare

from cliquedec.graph import DenseGraph
from cliquedec.removal import (
    Abort,
    RemovalConfig,
    estimate_abort_rate,
    four_clique_target,
    run_kk_removal,
    sample_gamma_c,
    triangle_target,
    triangle_truncation,
    trial_configs,
)


def test_targets_at_desk_scale():
    assert four_clique_target(200) == 893
    assert triangle_target(200) == 4880
    assert triangle_truncation(200, 0.4) == 4804


class TestRunKkRemoval:
    def test_k4_consumes_k4(self):
        g = DenseGraph.complete(4)
        result = run_kk_removal(g, 4, 1, Random(0))
        assert result.aborted_at is None
        assert result.removed == ((0, 1, 2, 3),)
        assert g.m == 0

    def test_triangle_phase_aborts_when_exhausted(self):
        g = DenseGraph.complete(3)
        result = run_kk_removal(g, 3, 2, Random(0))
        assert result.removed == ((0, 1, 2),)
        assert result.aborted_at == 2

    def test_unsupported_size(self):
        with pytest.raises(ValueError):
            run_kk_removal(DenseGraph.complete(6), 5, 1, Random(0))

    def test_edge_ledger_every_step(self):
        n = 40
        g = DenseGraph.complete(n)
        rng = Random(77)
        total = n * (n - 1) // 2
        for t in range(1, 21):
            assert run_kk_removal(g, 4, 1, rng).aborted_at is None
            assert g.m == total - 6 * t
        base = g.m
        for t in range(1, 11):
            assert run_kk_removal(g, 3, 1, rng).aborted_at is None
            assert g.m == base - 3 * t

    def test_low_density_fallback_still_uniform_choice(self):
        # density below the fallback threshold forces the enumeration route
        g = DenseGraph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4)])
        result = run_kk_removal(g, 3, 1, Random(5), fallback_threshold=1.1)
        assert result.removed == ((0, 1, 2),)

    def test_triangle_choice_uniform_on_k5(self):
        rng = Random(31)
        counts = Counter()
        for _ in range(20_000):
            g = DenseGraph.complete(5)
            counts[run_kk_removal(g, 3, 1, rng).removed[0]] += 1
        assert len(counts) == 10
        _, p = chisquare(list(counts.values()))
        assert p > 1e-3


class TestSampleGammaC:
    def test_tiny_override_schedule(self):
        cfg = RemovalConfig(n=4, seed=1, s4_steps=1, s3_steps=0)
        result = sample_gamma_c(cfg)
        assert not result.aborted
        assert result.outcome.cliques == ((0, 1, 2, 3),)
        assert result.clique_counts == (1, 0, 0)

    def test_desk_scale_run_matches_targets(self):
        cfg = RemovalConfig(n=60, c=0.7, seed=9)
        s4 = four_clique_target(60)
        steps3 = triangle_target(60) - triangle_truncation(60, 0.7)
        result = sample_gamma_c(cfg)
        assert not result.aborted
        n4, n3, n2 = result.clique_counts
        assert (n4, n3) == (s4, steps3)
        assert 6 * n4 + 3 * n3 + n2 == 60 * 59 // 2
        d = result.decomposition
        assert d.validate() == []
        profile = d.profile(11)
        assert profile.count(4) == s4
        assert profile.count(3) == steps3
        assert profile.count(2) == n2

    def test_determinism(self):
        cfg = RemovalConfig(n=60, c=0.7, seed=123)
        a = sample_gamma_c(cfg)
        b = sample_gamma_c(cfg)
        assert a == b
        other = sample_gamma_c(RemovalConfig(n=60, c=0.7, seed=124))
        assert other != a

    def test_trace_structure(self):
        cfg = RemovalConfig(n=60, c=0.7, seed=4, checkpoint_every=10)
        result = sample_gamma_c(cfg)
        steps = [step for step, _ in result.typicality_trace]
        assert steps == sorted(steps)
        s4 = four_clique_target(60)
        for step, report in result.typicality_trace:
            assert report.h == (3 if step <= s4 else 2)
            assert report.epsilon == 1.0
            assert report.passed == (report.worst_relative_deviation <= 1.0)

    def test_explicit_epsilon_schedule(self):
        cfg = RemovalConfig(
            n=60, c=0.7, seed=4, checkpoint_every=25,
            epsilon_schedule={4: 0.5, 3: 0.5},
        )
        result = sample_gamma_c(cfg)
        assert result.typicality_trace  # relative tolerances still produce reports

    def test_final_density(self):
        result = sample_gamma_c(RemovalConfig(n=60, c=0.7, seed=2))
        assert result.final_density(60) == result.clique_counts[2] / (60 * 59 // 2)

    def test_too_small_without_override(self):
        with pytest.raises(ValueError):
            RemovalConfig(n=30, c=0.4, seed=0).resolved_steps()

    def test_config_validation(self):
        with pytest.raises(ValueError):
            RemovalConfig(n=10, c=1.5)
        with pytest.raises(ValueError):
            RemovalConfig(n=10, checkpoint_every=0)

    def test_as_dict_shapes(self):
        result = sample_gamma_c(RemovalConfig(n=4, seed=1, s4_steps=1, s3_steps=0))
        payload = result.as_dict()
        assert payload["outcome"]["kind"] == "decomposition"
        assert payload["clique_counts"] == {"n4": 1, "n3": 0, "n2": 0}
        elided = result.as_dict(include_decomposition=False)
        assert "decomposition" not in elided["outcome"]

    def test_abort_is_reported_not_raised(self):
        # force far more triangle steps than K_4 can supply
        cfg = RemovalConfig(n=4, seed=0, s4_steps=2, s3_steps=0)
        result = sample_gamma_c(cfg)
        assert result.aborted
        assert result.outcome == Abort(phase=4, step=2)
        assert result.clique_counts == (1, 0, 0)


class TestAbortRate:
    def test_zero_abort_on_trivial_schedule(self):
        cfg = RemovalConfig(n=4, seed=3, s4_steps=1, s3_steps=0)
        report = estimate_abort_rate(cfg, trials=5)
        assert report.abort_rate == 0.0
        assert report.by_phase == {}
        assert report.mean_min_density == 0.0

    def test_pathological_depth_reports_honestly(self):
        # n=50 with c=0.9 drives the triangle phase far below its feasible
        # range; the estimate must come back well formed whatever happens.
        report = estimate_abort_rate(RemovalConfig(n=50, c=0.9, seed=11), trials=5)
        assert 0.0 <= report.abort_rate <= 1.0
        assert set(report.by_phase) <= {3, 4}
        assert 0.0 <= report.mean_min_density <= 1.0

    def test_trial_seeds_are_distinct_and_stable(self):
        cfg = RemovalConfig(n=4, seed=3, s4_steps=1, s3_steps=0)
        seeds_a = [c.seed for c in trial_configs(cfg, 4)]
        seeds_b = [c.seed for c in trial_configs(cfg, 4)]
        assert seeds_a == seeds_b
        assert len(set(seeds_a)) == 4

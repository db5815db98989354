"""End-to-end pipeline and Monte Carlo sampling."""

import math

import pytest

from weakclone.errors import InvalidTrialCount, OrthogonalRegime
from weakclone.optimal import optimal_b_direct, perfect_p
from weakclone.protocol import (
    MonteCarloStats,
    PipelineReport,
    duan_guo_bound,
    monte_carlo,
    run_pipeline,
)
from weakclone.qmath import StateAngle
from weakclone.weakmeas import WeakStrength, success_prob

PI_8 = math.pi / 8.0
P_YES_STAR = 0.585786437626905  # 1 / (1 + sin(pi/4))
F_DIRECT_PI_8 = 0.9898381615942816


class TestRunPipeline:
    def test_perfect_operating_point(self):
        report = run_pipeline(StateAngle(PI_8), perfect_p(StateAngle(PI_8)))
        assert report.p_yes == pytest.approx(P_YES_STAR, abs=1e-12)
        assert report.xi_prime.xi == pytest.approx(math.pi / 12.0, abs=1e-12)
        assert report.fidelity_closed == pytest.approx(1.0, abs=1e-12)
        assert report.fidelity_sim == pytest.approx(1.0, abs=1e-12)

    def test_unit_strength_reduces_to_direct_cloning(self):
        report = run_pipeline(StateAngle(PI_8), WeakStrength(1.0))
        assert report.p_yes == pytest.approx(1.0, abs=1e-15)
        assert report.xi_prime.xi == pytest.approx(PI_8, abs=1e-15)
        assert report.coeffs.b == pytest.approx(
            optimal_b_direct(StateAngle(PI_8)), abs=1e-12
        )
        assert report.fidelity_closed == pytest.approx(
            F_DIRECT_PI_8, abs=1e-12
        )

    def test_below_threshold_raises(self):
        with pytest.raises(OrthogonalRegime):
            run_pipeline(StateAngle(PI_8), WeakStrength(0.01))

    def test_report_rejects_route_disagreement(self):
        good = run_pipeline(StateAngle(PI_8), WeakStrength(0.9))
        with pytest.raises(ValueError, match="disagree"):
            PipelineReport(
                good.xi,
                good.strength,
                good.p_yes,
                good.xi_prime,
                good.coeffs,
                good.fidelity_closed,
                good.fidelity_sim + 1e-6,
            )

    def test_report_rejects_bad_probability(self):
        good = run_pipeline(StateAngle(PI_8), WeakStrength(0.9))
        with pytest.raises(ValueError, match="probability"):
            PipelineReport(
                good.xi,
                good.strength,
                1.5,
                good.xi_prime,
                good.coeffs,
                good.fidelity_closed,
                good.fidelity_sim,
            )

    def test_closure_holds_across_strength_sweep(self):
        xi = StateAngle(PI_8)
        for t in range(1, 21):
            p = 0.18 + (1.0 - 0.18) * t / 20.0
            report = run_pipeline(xi, WeakStrength(p))
            gap = abs(report.fidelity_closed - report.fidelity_sim)
            assert gap < 1e-9


class TestMonteCarlo:
    def test_same_seed_is_bit_identical(self):
        xi = StateAngle(PI_8)
        strength = perfect_p(xi)
        first = monte_carlo(xi, strength, 50_000, seed=7)
        second = monte_carlo(xi, strength, 50_000, seed=7)
        assert first == second

    def test_different_seeds_differ(self):
        xi = StateAngle(PI_8)
        strength = perfect_p(xi)
        first = monte_carlo(xi, strength, 50_000, seed=7)
        other = monte_carlo(xi, strength, 50_000, seed=8)
        assert first.successes != other.successes

    def test_success_rate_tracks_closed_form(self):
        xi = StateAngle(PI_8)
        strength = perfect_p(xi)
        stats = monte_carlo(xi, strength, 100_000, seed=11)
        expected = success_prob(xi, strength)
        sigma = math.sqrt(expected * (1.0 - expected) / stats.trials)
        assert abs(stats.success_rate - expected) < 4.0 * sigma
        assert stats.standard_error == pytest.approx(sigma, rel=1e-2)

    def test_perfect_point_gives_unit_fidelity(self):
        xi = StateAngle(PI_8)
        stats = monte_carlo(xi, perfect_p(xi), 10_000, seed=3)
        assert stats.mean_fidelity_clone1 == pytest.approx(1.0, abs=1e-12)
        assert stats.mean_fidelity_clone2 == pytest.approx(1.0, abs=1e-12)

    def test_clone_means_are_symmetric_off_the_curve(self):
        xi = StateAngle(PI_8)
        stats = monte_carlo(xi, WeakStrength(0.8), 10_000, seed=3)
        assert stats.mean_fidelity_clone1 == pytest.approx(
            stats.mean_fidelity_clone2, abs=1e-12
        )
        assert stats.mean_fidelity_clone1 < 1.0

    def test_unit_strength_always_succeeds(self):
        stats = monte_carlo(StateAngle(PI_8), WeakStrength(1.0), 1000, seed=7)
        assert stats.successes == 1000
        assert stats.success_rate == 1.0
        assert stats.standard_error == 0.0

    def test_no_success_yields_nan_means(self):
        # a single trial that fails post-selection leaves no fidelity
        # samples at all
        stats = monte_carlo(StateAngle(PI_8), WeakStrength(0.25), 1, seed=1)
        assert stats.successes == 0
        assert math.isnan(stats.mean_fidelity_clone1)
        assert math.isnan(stats.mean_fidelity_clone2)

    @pytest.mark.parametrize("trials", [0, -5])
    def test_rejects_bad_trial_count(self, trials):
        with pytest.raises(InvalidTrialCount):
            monte_carlo(StateAngle(PI_8), WeakStrength(0.9), trials, seed=0)

    def test_below_threshold_raises(self):
        with pytest.raises(OrthogonalRegime):
            monte_carlo(StateAngle(PI_8), WeakStrength(0.05), 100, seed=0)


class TestMonteCarloStats:
    def test_rejects_inconsistent_rate(self):
        with pytest.raises(ValueError, match="success_rate"):
            MonteCarloStats(10, 5, 0.4, 1.0, 1.0, 0.1, 0)

    def test_rejects_excess_successes(self):
        with pytest.raises(ValueError, match="successes"):
            MonteCarloStats(10, 11, 1.1, 1.0, 1.0, 0.1, 0)

    def test_rejects_zero_trials(self):
        with pytest.raises(InvalidTrialCount):
            MonteCarloStats(0, 0, 0.0, 1.0, 1.0, 0.0, 0)


class TestDuanGuoBound:
    @pytest.mark.parametrize(
        "xi,expected",
        [
            (0.0, 1.0),
            (PI_8, P_YES_STAR),
            (math.pi / 4.0, 0.5),
        ],
    )
    def test_frozen_values(self, xi, expected):
        assert duan_guo_bound(StateAngle(xi)) == pytest.approx(
            expected, abs=1e-15
        )

    def test_saturated_by_perfect_strength(self):
        for k in range(1, 101):
            xi = StateAngle(k * math.pi / 400.0)
            attained = success_prob(xi, perfect_p(xi))
            assert attained == pytest.approx(duan_guo_bound(xi), abs=1e-12)

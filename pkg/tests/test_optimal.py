"""Closed-form optima against the independent brute-force maximizer."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from weakclone.cloner import coeffs_from_b, fidelity_general
from weakclone.optimal import (
    _fidelity_of_b,
    _fidelity_terms,
    brute_force_b,
    optimal_b_direct,
    optimal_b_general,
    optimal_fidelity,
    perfect_p,
)
from weakclone.qmath import StateAngle
from weakclone.weakmeas import WeakStrength, overlap_after

PI_8 = math.pi / 8.0
PI_12 = math.pi / 12.0
# frozen values computed once with an independent high-precision route
B_DIRECT_PI_8 = 0.3055478437093496
B_DIRECT_PI_4 = 0.35355339059327373  # 1 / (2 sqrt 2)
B_WORKED = 0.28867513459481287  # 1 / (2 sqrt 3)
F_DIRECT_PI_8 = 0.9898381615942816
F_PI_8_AT_ZERO_PRIME = 0.9592793267718459
P_STAR_PI_8 = 0.5147186257614297

angles_st = st.floats(min_value=0.0, max_value=math.pi / 4.0)
interior_st = st.floats(min_value=0.01, max_value=math.pi / 4.0)
# capped below pi/4: for the identical pair every strength satisfies the
# matching condition, so the root is only unique away from the endpoint
matching_st = st.floats(min_value=0.01, max_value=0.75)


class TestOptimalBDirect:
    @pytest.mark.parametrize(
        "xi,expected",
        [
            (PI_8, B_DIRECT_PI_8),
            (math.pi / 4.0, B_DIRECT_PI_4),
            (0.0, 0.0),
        ],
    )
    def test_frozen_values(self, xi, expected):
        assert optimal_b_direct(StateAngle(xi)) == pytest.approx(
            expected, abs=1e-12
        )

    def test_tiny_angle_limit(self):
        assert optimal_b_direct(StateAngle(1e-9)) == 0.0

    @given(xi=angles_st)
    def test_stays_in_range(self, xi):
        assert 0.0 <= optimal_b_direct(StateAngle(xi)) <= 0.5


class TestOptimalBGeneral:
    def test_worked_value(self):
        b = optimal_b_general(StateAngle(PI_8), StateAngle(PI_12))
        assert b == pytest.approx(B_WORKED, abs=1e-12)
        assert b == pytest.approx(1.0 / (2.0 * math.sqrt(3.0)), abs=1e-15)

    @given(xi=st.floats(min_value=1e-4, max_value=math.pi / 4.0))
    @settings(max_examples=100)
    def test_reduces_to_direct_form(self, xi):
        # below ~1e-4 the literal cosecant form loses digits to
        # cancellation (and below 1e-8 it returns the limit 0 outright),
        # so the 1e-12 identity is only meaningful away from zero
        angle = StateAngle(xi)
        assert optimal_b_general(angle, angle) == pytest.approx(
            optimal_b_direct(angle), abs=1e-12
        )

    def test_reduction_at_zero_is_exact(self):
        angle = StateAngle(0.0)
        assert optimal_b_general(angle, angle) == 0.0
        assert optimal_b_direct(angle) == 0.0

    @given(xi=angles_st, xi_prime=angles_st)
    @settings(max_examples=100)
    def test_is_a_local_maximum(self, xi, xi_prime):
        angle = StateAngle(xi)
        seen = StateAngle(xi_prime)
        b = optimal_b_general(angle, seen)
        assert 0.0 <= b <= 0.5
        coeffs = coeffs_from_b(b)
        best = fidelity_general(angle, seen, coeffs)
        for shifted in (b - 1e-4, b + 1e-4):
            if 0.0 <= shifted <= 0.5:
                rival = fidelity_general(angle, seen, coeffs_from_b(shifted))
                assert best >= rival - 1e-12


class TestOptimalFidelity:
    def test_worked_point_is_unity(self):
        value = optimal_fidelity(StateAngle(PI_8), StateAngle(PI_12))
        assert value == pytest.approx(1.0, abs=1e-12)

    def test_direct_cloning_value(self):
        value = optimal_fidelity(StateAngle(PI_8), StateAngle(PI_8))
        assert value == pytest.approx(F_DIRECT_PI_8, abs=1e-12)

    def test_orthogonal_intermediate_pair(self):
        value = optimal_fidelity(StateAngle(PI_8), StateAngle(0.0))
        assert value == pytest.approx(F_PI_8_AT_ZERO_PRIME, abs=1e-12)

    def test_orthogonal_judged_pair_needs_no_hedging(self):
        # S = 0 branch: fidelity is (1 + cos 2 xi') / 2 at b = 0
        value = optimal_fidelity(StateAngle(0.0), StateAngle(PI_12))
        assert value == pytest.approx(
            0.5 * (1.0 + math.cos(2.0 * PI_12)), abs=1e-12
        )

    @given(xi=angles_st, xi_prime=angles_st)
    @settings(max_examples=100)
    def test_equals_fidelity_at_optimal_b(self, xi, xi_prime):
        angle = StateAngle(xi)
        seen = StateAngle(xi_prime)
        b = optimal_b_general(angle, seen)
        direct = fidelity_general(angle, seen, coeffs_from_b(b))
        assert optimal_fidelity(angle, seen) == pytest.approx(
            direct, abs=1e-12
        )

    @given(xi=angles_st, xi_prime=angles_st)
    @settings(max_examples=100)
    def test_range(self, xi, xi_prime):
        value = optimal_fidelity(StateAngle(xi), StateAngle(xi_prime))
        assert 0.5 - 1e-12 <= value <= 1.0


class TestBruteForce:
    def test_private_objective_matches_public_route(self):
        # the vectorized scan objective and fidelity_general must stay
        # the same function of b
        angle = StateAngle(0.31)
        seen = StateAngle(0.17)
        cc, ss = _fidelity_terms(angle, seen)
        for b in np.linspace(0.0, 0.5, 23):
            fast = float(_fidelity_of_b(b, cc, ss))
            slow = fidelity_general(angle, seen, coeffs_from_b(float(b)))
            assert fast == pytest.approx(slow, abs=1e-15)

    def test_agrees_with_closed_forms_at_worked_point(self):
        found = brute_force_b(StateAngle(PI_8), StateAngle(PI_12))
        assert found.b_star == pytest.approx(B_WORKED, abs=1e-6)
        assert found.fidelity == pytest.approx(1.0, abs=1e-9)
        assert found.coeffs.b == found.b_star

    @given(xi=interior_st, xi_prime=angles_st)
    @settings(max_examples=25, deadline=None)
    def test_agrees_with_closed_forms(self, xi, xi_prime):
        angle = StateAngle(xi)
        seen = StateAngle(xi_prime)
        found = brute_force_b(angle, seen)
        assert found.b_star == pytest.approx(
            optimal_b_general(angle, seen), abs=1e-6
        )
        assert found.fidelity == pytest.approx(
            optimal_fidelity(angle, seen), abs=1e-9
        )

    def test_flat_objective_resolves_to_smaller_b(self):
        # at xi = 0, xi' = pi/4 the fidelity does not depend on b at
        # all; the tie rule must keep the argmax at the left edge
        found = brute_force_b(StateAngle(0.0), StateAngle(math.pi / 4.0))
        assert found.b_star < 1e-9


class TestPerfectP:
    @pytest.mark.parametrize(
        "xi,expected",
        [
            (PI_8, P_STAR_PI_8),
            (math.pi / 4.0, 0.5),
            (0.0, 1.0),
        ],
    )
    def test_frozen_values(self, xi, expected):
        assert perfect_p(StateAngle(xi)).p == pytest.approx(expected, abs=1e-12)

    @given(xi=matching_st)
    @settings(max_examples=40, deadline=None)
    def test_matches_root_of_matching_condition(self, xi):
        # independent root-finder oracle: the strength solving
        # overlap_after = sin^2 2xi must equal the closed form
        angle = StateAngle(xi)
        target = math.sin(2.0 * xi) ** 2

        def gap(p: float) -> float:
            return overlap_after(angle, WeakStrength(p)) - target

        s = math.sin(2.0 * xi)
        threshold = (1.0 - s) / (1.0 + s)
        root = brentq(gap, threshold + 1e-13, 1.0, xtol=1e-14)
        assert perfect_p(angle).p == pytest.approx(root, abs=1e-12)

    @given(xi=angles_st)
    def test_lies_in_valid_regime(self, xi):
        angle = StateAngle(xi)
        strength = perfect_p(angle)
        assert 0.0 <= strength.p <= 1.0
        s = math.sin(2.0 * xi)
        assert strength.p >= (1.0 - s) / (1.0 + s) - 1e-12

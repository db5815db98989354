"""Verification suite runner, including mutation sensitivity."""

import math
from types import SimpleNamespace

import numpy as np
import pytest

from weakclone import optimal, verify, weakmeas


def results_by_name(names=None):
    return {r.name: r for r in verify.run_suites(names)}


class TestRunner:
    def test_every_registered_suite_passes(self):
        results = verify.run_suites()
        failures = [r.name for r in results if not r.passed]
        assert failures == []
        assert len(results) == len(verify.SUITES)
        assert all(r.detail for r in results)

    def test_subset_selection_preserves_request_order(self):
        names = ["kraus-completeness", "state-geometry"]
        results = verify.run_suites(names)
        assert [r.name for r in results] == names

    def test_unknown_suite_name_raises(self):
        with pytest.raises(KeyError, match="no-such-suite"):
            verify.run_suites(["no-such-suite"])


class TestMutationSensitivity:
    def test_sign_flip_in_optimal_b_is_caught(self, monkeypatch):
        def mutated(xi):
            if xi.xi < 1e-8:
                return 0.0
            s = math.sin(2.0 * xi.xi)
            csc = 1.0 / s
            # wrong sign on the cosecant term
            return 0.125 * (
                1.0 + csc + csc * math.sqrt(9.0 * s * s - 2.0 * s + 1.0)
            )

        monkeypatch.setattr(optimal, "optimal_b_direct", mutated)
        results = results_by_name(["oracle-agreement", "optimum-identities"])
        assert not results["oracle-agreement"].passed
        assert not results["optimum-identities"].passed

    def test_linear_kraus_damping_is_caught(self, monkeypatch):
        plus = np.full((2, 2), 0.5)
        minus = np.array([[0.5, -0.5], [-0.5, 0.5]])

        def mutated(strength):
            # p instead of sqrt(p) on the yes operator; bypasses the
            # constructor so the suite itself must notice
            return SimpleNamespace(
                m_yes=strength.p * plus + minus,
                m_no=math.sqrt(1.0 - strength.p) * plus,
            )

        monkeypatch.setattr(weakmeas, "kraus_pair", mutated)
        results = results_by_name(["kraus-completeness"])
        assert not results["kraus-completeness"].passed
        assert "completeness" in results["kraus-completeness"].detail

    def test_unmutated_suites_still_pass_after_monkeypatch(self, monkeypatch):
        monkeypatch.setattr(optimal, "optimal_b_direct", lambda xi: 0.0)
        results = results_by_name(["kraus-completeness", "cloner-isometry"])
        assert results["kraus-completeness"].passed
        assert results["cloner-isometry"].passed

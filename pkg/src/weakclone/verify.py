"""Self-contained verification suites behind the `verify` subcommand.

Each suite re-derives a family of identities from scratch (explicit
state vectors, dense grids, the brute-force optimizer) and checks the
closed forms against them.  Suites report a short detail string on
success and raise on any violation; the runner turns that into a
pass/fail table.  Calls into the library go through module attributes
on purpose, so replacing a single function is enough to make the
affected suites fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import cloner, optimal, protocol, qmath, weakmeas

_QUARTER_PI = math.pi / 4.0


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one verification suite."""

    name: str
    passed: bool
    detail: str


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise AssertionError(message)


def _angles(n: int, *, open_left: bool = False) -> list[qmath.StateAngle]:
    lo = _QUARTER_PI / n if open_left else 0.0
    return [qmath.StateAngle(x) for x in np.linspace(lo, _QUARTER_PI, n)]


def _strengths(n: int) -> list[weakmeas.WeakStrength]:
    return [weakmeas.WeakStrength(p) for p in np.linspace(0.0, 1.0, n)]


def _random_qubits(n: int, seed: int) -> list[qmath.PureQubit]:
    rng = np.random.default_rng(seed)
    qubits = []
    for _ in range(n):
        theta = rng.uniform(0.0, math.pi)
        phi = rng.uniform(0.0, 2.0 * math.pi)
        qubits.append(qmath.PureQubit(
            math.cos(0.5 * theta),
            math.sin(0.5 * theta) * complex(math.cos(phi), math.sin(phi)),
        ))
    return qubits


def suite_state_geometry() -> str:
    """Pair overlap, tensor products and partial traces agree with
    explicit vector algebra."""
    worst = 0.0
    for xi in _angles(100):
        psi1, psi2 = qmath.state_pair(xi)
        inner = float(np.real(psi1.vector.conj() @ psi2.vector))
        worst = max(worst, abs(inner - qmath.overlap(xi)))
        _require(worst <= 1e-12, f"overlap mismatch {worst} at xi={xi.xi}")
    for q1, q2 in zip(_random_qubits(50, seed=11), _random_qubits(50, seed=12)):
        prod = qmath.tensor(q1, q2)
        _require(abs(prod.norm - 1.0) <= 1e-12, "tensor product not unit norm")
        rho1 = qmath.partial_trace(prod, 1)
        rho2 = qmath.partial_trace(prod, 2)
        # reducing a product state must return each factor exactly
        gap1 = abs(qmath.fidelity_pure(rho1, q1) - 1.0)
        gap2 = abs(qmath.fidelity_pure(rho2, q2) - 1.0)
        worst = max(worst, gap1, gap2)
        _require(worst <= 1e-12, f"partial trace broke a product state: {worst}")
    return f"max deviation {worst:.3e} over 100 angles and 50 product states"


def suite_kraus_completeness() -> str:
    """The measurement operators sum to the identity for every strength."""
    worst = 0.0
    for strength in _strengths(100):
        pair = weakmeas.kraus_pair(strength)
        total = pair.m_yes.T @ pair.m_yes + pair.m_no.T @ pair.m_no
        worst = max(worst, float(np.max(np.abs(total - np.eye(2)))))
        _require(worst <= 1e-12, f"completeness broken at p={strength.p}")
    return f"max |M+M - I| = {worst:.3e} over 100 strengths"


def suite_postselection_closed_forms() -> str:
    """Success probability, post-selected overlap and effective angle
    match an explicit Kraus-operator simulation on a 50x50 grid."""
    worst = 0.0
    for xi in _angles(50):
        psi1, psi2 = qmath.state_pair(xi)
        for strength in _strengths(50):
            m = weakmeas.kraus_pair(strength).m_yes
            v1 = m @ psi1.vector
            v2 = m @ psi2.vector
            q1 = float(np.real(v1.conj() @ v1))
            q2 = float(np.real(v2.conj() @ v2))
            closed = weakmeas.success_prob(xi, strength)
            worst = max(worst, abs(q1 - closed), abs(q2 - closed))
            _require(
                worst <= 1e-12,
                f"success probability off by {worst} at "
                f"(xi={xi.xi}, p={strength.p})",
            )
            if q1 <= 1e-12:
                continue  # degenerate branch, nothing to post-select
            inner = float(np.real(v1.conj() @ v2)) / math.sqrt(q1 * q2)
            after = weakmeas.overlap_after(xi, strength)
            worst = max(worst, abs(inner - after))
            _require(
                worst <= 1e-12,
                f"post-selected overlap off by {worst} at "
                f"(xi={xi.xi}, p={strength.p})",
            )
            if after >= 0.0:
                angle = weakmeas.effective_angle(xi, strength)
                worst = max(worst, abs(math.sin(2.0 * angle.xi) - after))
                _require(
                    worst <= 1e-12,
                    f"effective angle off by {worst} at "
                    f"(xi={xi.xi}, p={strength.p})",
                )
    return f"max deviation {worst:.3e} over the 50x50 grid"


def suite_overlap_reduction() -> str:
    """Post-selection never increases the pair overlap; it preserves it
    exactly when p = 1 or the pair is identical (xi = pi/4)."""
    checked = 0
    for xi in _angles(40):
        s = math.sin(2.0 * xi.xi)
        for strength in _strengths(40):
            if strength.p == 0.0 and xi.xi == _QUARTER_PI:
                continue  # yes branch impossible
            after = weakmeas.overlap_after(xi, strength)
            _require(
                after <= s + 1e-12,
                f"overlap grew at (xi={xi.xi}, p={strength.p})",
            )
            if strength.p == 1.0 or xi.xi == _QUARTER_PI:
                _require(
                    abs(after - s) <= 1e-12,
                    f"overlap not preserved at (xi={xi.xi}, p={strength.p})",
                )
            else:
                _require(
                    after < s,
                    f"overlap not strictly reduced at "
                    f"(xi={xi.xi}, p={strength.p})",
                )
            checked += 1
    return f"{checked} grid cells checked"


def suite_cloner_isometry() -> str:
    """Every admissible b yields orthonormal image columns and a map
    that preserves norms and treats both clones symmetrically."""
    rng = np.random.default_rng(7)
    worst = 0.0
    for b in rng.uniform(0.0, 0.5, size=100):
        coeffs = cloner.coeffs_from_b(float(b))
        matrix = cloner.isometry(coeffs).matrix
        gram = matrix.T @ matrix
        worst = max(worst, float(np.max(np.abs(gram - np.eye(2)))))
        _require(worst <= 1e-12, f"columns not orthonormal at b={b}")
    for q, b in zip(_random_qubits(40, seed=21), rng.uniform(0.0, 0.5, 40)):
        coeffs = cloner.coeffs_from_b(float(b))
        out = cloner.clone(q, coeffs)
        worst = max(worst, abs(out.norm - 1.0))
        _require(worst <= 1e-12, f"clone output not unit norm at b={b}")
        rho1 = qmath.partial_trace(out, 1).entries
        rho2 = qmath.partial_trace(out, 2).entries
        worst = max(worst, float(np.max(np.abs(rho1 - rho2))))
        _require(worst <= 1e-12, f"clones asymmetric at b={b}")
    return f"max deviation {worst:.3e} over 140 samples"


def suite_fidelity_closed_vs_sim() -> str:
    """Closed-form fidelities match the state-vector simulation on a
    50x50x20 (xi, xi', b) grid, and the two members of the pair are
    cloned equally well."""
    worst = 0.0
    b_values = [cloner.coeffs_from_b(b) for b in np.linspace(0.0, 0.5, 20)]
    angles = _angles(50)
    for xi in angles:
        psi1, psi2 = qmath.state_pair(xi)
        for coeffs in b_values:
            closed = cloner.fidelity_direct(xi, coeffs)
            sim1 = cloner.clone_fidelity_sim(psi1, psi1, coeffs)
            sim2 = cloner.clone_fidelity_sim(psi2, psi2, coeffs)
            worst = max(worst, abs(closed - sim1), abs(sim1 - sim2))
            _require(worst <= 1e-12, f"direct fidelity off by {worst}")
        for xi_prime in angles:
            seen1, seen2 = qmath.state_pair(xi_prime)
            for coeffs in b_values:
                closed = cloner.fidelity_general(xi, xi_prime, coeffs)
                sim1 = cloner.clone_fidelity_sim(seen1, psi1, coeffs)
                sim2 = cloner.clone_fidelity_sim(seen2, psi2, coeffs)
                worst = max(worst, abs(closed - sim1), abs(sim1 - sim2))
                _require(
                    worst <= 1e-12,
                    f"general fidelity off by {worst} at "
                    f"(xi={xi.xi}, xi'={xi_prime.xi}, b={coeffs.b})",
                )
            identity_gap = abs(
                cloner.fidelity_general(xi, xi, b_values[7])
                - cloner.fidelity_direct(xi, b_values[7])
            )
            worst = max(worst, identity_gap)
    return f"max deviation {worst:.3e} over the 50x50x20 grid"


def suite_oracle_agreement() -> str:
    """Closed-form optimum matches the brute-force maximizer: b within
    1e-6 and fidelity within 1e-9 on a 40x40 grid, plus the single-angle
    formula along the diagonal."""
    worst_b = 0.0
    worst_f = 0.0
    angles = _angles(40, open_left=True)
    for xi in angles:
        for xi_prime in angles:
            found = optimal.brute_force_b(xi, xi_prime)
            gap_b = abs(optimal.optimal_b_general(xi, xi_prime) - found.b_star)
            gap_f = abs(optimal.optimal_fidelity(xi, xi_prime) - found.fidelity)
            worst_b = max(worst_b, gap_b)
            worst_f = max(worst_f, gap_f)
            _require(
                worst_b <= 1e-6,
                f"optimal b off brute force by {worst_b} at "
                f"(xi={xi.xi}, xi'={xi_prime.xi})",
            )
            _require(
                worst_f <= 1e-9,
                f"optimal fidelity off brute force by {worst_f} at "
                f"(xi={xi.xi}, xi'={xi_prime.xi})",
            )
    for xi in angles:
        found = optimal.brute_force_b(xi, xi)
        gap_b = abs(optimal.optimal_b_direct(xi) - found.b_star)
        _require(
            gap_b <= 1e-6,
            f"single-angle optimal b off brute force by {gap_b} at xi={xi.xi}",
        )
        worst_b = max(worst_b, gap_b)
    return f"max |b| gap {worst_b:.3e}, max fidelity gap {worst_f:.3e}"


def suite_optimum_identities() -> str:
    """Reduction of the two-angle optimum to the single-angle formula,
    unit fidelity on the matched curve, range constraints, and the
    success-probability bound at the perfect operating point."""
    worst = 0.0
    for xi in _angles(100):
        gap = abs(
            optimal.optimal_b_general(xi, xi) - optimal.optimal_b_direct(xi)
        )
        worst = max(worst, gap)
        _require(worst <= 1e-12, f"reduction identity off by {worst}")
    for xi in _angles(50, open_left=True):
        s = math.sin(2.0 * xi.xi)
        matched = qmath.StateAngle(0.5 * math.asin(s * s))
        gap = abs(optimal.optimal_fidelity(xi, matched) - 1.0)
        worst = max(worst, gap)
        _require(gap <= 1e-9, f"unit-fidelity curve off by {gap} at xi={xi.xi}")
    for xi in _angles(100):
        strength = optimal.perfect_p(xi)
        gap = abs(
            weakmeas.success_prob(xi, strength) - protocol.duan_guo_bound(xi)
        )
        worst = max(worst, gap)
        _require(gap <= 1e-12, f"success bound off by {gap} at xi={xi.xi}")
    angles = _angles(30)
    for xi in angles:
        for xi_prime in angles:
            b = optimal.optimal_b_general(xi, xi_prime)
            _require(0.0 <= b <= 0.5, f"optimal b {b} out of range")
            f = optimal.optimal_fidelity(xi, xi_prime)
            _require(
                0.5 - 1e-12 <= f <= 1.0 + 1e-12, f"fidelity {f} out of range"
            )
    return f"max identity deviation {worst:.3e}"


def suite_pipeline_closure() -> str:
    """The end-to-end report agrees with the standalone closed forms and
    its internal simulation cross-check on a strength sweep."""
    worst = 0.0
    for xi in _angles(20, open_left=True):
        s = math.sin(2.0 * xi.xi)
        threshold = (1.0 - s) / (1.0 + s)
        # start a hair above the threshold: exactly at it, round-off can
        # put the post-selected overlap on either side of zero
        for t in np.linspace(1e-3, 1.0, 10):
            strength = weakmeas.WeakStrength(threshold + t * (1.0 - threshold))
            report = protocol.run_pipeline(xi, strength)
            expected = optimal.optimal_fidelity(xi, report.xi_prime)
            worst = max(
                worst,
                abs(report.fidelity_closed - expected),
                abs(report.fidelity_closed - report.fidelity_sim),
                abs(report.p_yes - weakmeas.success_prob(xi, strength)),
            )
            _require(
                worst <= 1e-9,
                f"pipeline closure off by {worst} at "
                f"(xi={xi.xi}, p={strength.p})",
            )
    return f"max closure gap {worst:.3e} over 200 pipeline runs"


def suite_monte_carlo_soundness() -> str:
    """Sampled success rates sit within four binomial standard errors of
    the closed form in at least 24 of 25 grid cells, with bit-identical
    reruns and symmetric clones."""
    trials = 100_000
    hits = 0
    cells = 0
    for i, xi in enumerate(_angles(5, open_left=True)):
        s = math.sin(2.0 * xi.xi)
        threshold = (1.0 - s) / (1.0 + s)
        for j, t in enumerate(np.linspace(0.2, 1.0, 5)):
            strength = weakmeas.WeakStrength(
                threshold + t * (1.0 - threshold)
            )
            seed = 1000 + 10 * i + j
            stats = protocol.monte_carlo(xi, strength, trials, seed)
            again = protocol.monte_carlo(xi, strength, trials, seed)
            _require(stats == again, "rerun with the same seed differed")
            expected = weakmeas.success_prob(xi, strength)
            sigma = math.sqrt(expected * (1.0 - expected) / trials)
            # <= so the deterministic p = 1 cells (sigma = 0) count
            if abs(stats.success_rate - expected) <= 4.0 * sigma:
                hits += 1
            _require(
                abs(stats.mean_fidelity_clone1 - stats.mean_fidelity_clone2)
                <= 1e-12,
                "clone fidelity means differ",
            )
            cells += 1
    _require(hits >= 24, f"only {hits} of {cells} cells within 4 sigma")
    return f"{hits}/{cells} cells within 4 sigma at {trials} trials"


#: Registered suites in execution order.
SUITES: tuple[tuple[str, Callable[[], str]], ...] = (
    ("state-geometry", suite_state_geometry),
    ("kraus-completeness", suite_kraus_completeness),
    ("postselection-closed-forms", suite_postselection_closed_forms),
    ("overlap-reduction", suite_overlap_reduction),
    ("cloner-isometry", suite_cloner_isometry),
    ("fidelity-closed-vs-sim", suite_fidelity_closed_vs_sim),
    ("oracle-agreement", suite_oracle_agreement),
    ("optimum-identities", suite_optimum_identities),
    ("pipeline-closure", suite_pipeline_closure),
    ("monte-carlo-soundness", suite_monte_carlo_soundness),
)


def run_suites(names: list[str] | None = None) -> list[SuiteResult]:
    """Run the requested suites (all by default) and collect results.

    A suite passes when it returns; any exception marks it failed and is
    reported through the result's detail string.
    """
    selected = dict(SUITES)
    if names is not None:
        unknown = [n for n in names if n not in selected]
        if unknown:
            raise KeyError(f"unknown suite names: {unknown}")
        ordered = [(n, selected[n]) for n in names]
    else:
        ordered = list(SUITES)
    results = []
    for name, fn in ordered:
        try:
            detail = fn()
            results.append(SuiteResult(name, True, detail))
        except Exception as exc:  # a failing identity, not a crash path
            results.append(SuiteResult(name, False, f"{type(exc).__name__}: {exc}"))
    return results

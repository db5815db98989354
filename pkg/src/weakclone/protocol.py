"""End-to-end protocol: weak measurement, post-selection, optimal clone.

run_pipeline chains the closed forms and, in parallel, simulates the
same chain with explicit state vectors; the report refuses to construct
if the two routes disagree.  monte_carlo samples the protocol
trial-by-trial for statistical validation against the closed-form
success probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cloner import CloneCoeffs, clone, clone_fidelity_sim, coeffs_from_b
from .errors import InvalidTrialCount
from .optimal import optimal_b_general, optimal_fidelity
from .qmath import PureQubit, StateAngle, fidelity_pure, partial_trace, state_pair
from .weakmeas import WeakStrength, effective_angle, kraus_pair, post_select_yes, success_prob

#: Maximum allowed gap between the closed-form fidelity and the
#: state-vector simulation of the same pipeline.
CLOSURE_TOL = 1e-9


@dataclass(frozen=True)
class PipelineReport:
    """One full pass of the protocol at fixed (xi, p).

    fidelity_closed comes from the closed forms, fidelity_sim from an
    explicit state-vector simulation of the same chain; construction
    fails if they differ by more than CLOSURE_TOL.
    """

    xi: StateAngle
    strength: WeakStrength
    p_yes: float
    xi_prime: StateAngle
    coeffs: CloneCoeffs
    fidelity_closed: float
    fidelity_sim: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_yes <= 1.0:
            raise ValueError(f"success probability {self.p_yes!r} not in [0, 1]")
        gap = abs(self.fidelity_closed - self.fidelity_sim)
        if gap > CLOSURE_TOL:
            raise ValueError(
                f"closed form and simulation disagree by {gap!r}"
            )


@dataclass(frozen=True)
class MonteCarloStats:
    """Aggregates of a sampled protocol run.

    Mean fidelities are over post-selected trials only and are NaN when
    no trial succeeded.  standard_error is the binomial standard error
    of success_rate.
    """

    trials: int
    successes: int
    success_rate: float
    mean_fidelity_clone1: float
    mean_fidelity_clone2: float
    standard_error: float
    seed: int

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise InvalidTrialCount(f"trials must be >= 1, got {self.trials!r}")
        if not 0 <= self.successes <= self.trials:
            raise ValueError(
                f"successes {self.successes!r} outside [0, trials]"
            )
        if self.success_rate != self.successes / self.trials:
            raise ValueError("success_rate is not successes / trials")


def run_pipeline(xi: StateAngle, strength: WeakStrength) -> PipelineReport:
    """Run the protocol once at (xi, p) and cross-check both routes.

    Closed route: success probability, effective angle, optimal b and
    fidelity from the closed forms.  Simulated route: post-select the
    first member of the pair through the Kraus operator, clone it with
    the same coefficients, partial-trace and compute the fidelity
    against the original state.  Raises OrthogonalRegime below the
    strength threshold and DegenerateOutcome when post-selection cannot
    succeed at all.
    """
    p_yes = success_prob(xi, strength)
    xi_prime = effective_angle(xi, strength)
    coeffs = coeffs_from_b(optimal_b_general(xi, xi_prime))
    fidelity_closed = optimal_fidelity(xi, xi_prime)
    psi1, _ = state_pair(xi)
    intermediate, _ = post_select_yes(psi1, strength)
    fidelity_sim = clone_fidelity_sim(intermediate, psi1, coeffs)
    return PipelineReport(
        xi, strength, p_yes, xi_prime, coeffs, fidelity_closed, fidelity_sim
    )


def monte_carlo(
    xi: StateAngle, strength: WeakStrength, trials: int, seed: int
) -> MonteCarloStats:
    """Sample the protocol trial-by-trial.

    Each trial draws one member of the pair uniformly, applies the weak
    measurement, and on a "yes" outcome clones the post-selected state
    and records both clone fidelities against the drawn input.  All
    randomness comes from numpy's seeded Generator, two variates per
    trial drawn up front, so a given (xi, p, trials, seed) always
    reproduces bit-identical statistics regardless of platform or
    evaluation order.
    """
    if trials < 1:
        raise InvalidTrialCount(f"trials must be >= 1, got {trials!r}")
    report = run_pipeline(xi, strength)
    pair = state_pair(xi)
    m_yes = kraus_pair(strength).m_yes

    # Everything a trial can observe depends only on which member was
    # drawn, so the two possible branch probabilities and fidelity pairs
    # are computed once through the full simulation path.
    prob_yes = np.empty(2)
    fid1 = np.empty(2)
    fid2 = np.empty(2)
    for k, psi in enumerate(pair):
        v = m_yes @ psi.vector
        prob_yes[k] = float(np.real(v.conj() @ v))
        root = math.sqrt(prob_yes[k])
        post = PureQubit(v[0] / root, v[1] / root)
        out = clone(post, report.coeffs)
        fid1[k] = fidelity_pure(partial_trace(out, 1), psi)
        fid2[k] = fidelity_pure(partial_trace(out, 2), psi)

    draws = np.random.default_rng(seed).random((trials, 2))
    which = (draws[:, 0] >= 0.5).astype(np.intp)  # 0 -> psi1, 1 -> psi2
    succeeded = draws[:, 1] < prob_yes[which]
    successes = int(np.count_nonzero(succeeded))
    if successes > 0:
        mean1 = float(np.sum(np.where(succeeded, fid1[which], 0.0)) / successes)
        mean2 = float(np.sum(np.where(succeeded, fid2[which], 0.0)) / successes)
    else:
        mean1 = math.nan
        mean2 = math.nan
    rate = successes / trials
    stderr = math.sqrt(rate * (1.0 - rate) / trials)
    return MonteCarloStats(trials, successes, rate, mean1, mean2, stderr, seed)


def duan_guo_bound(xi: StateAngle) -> float:
    """Maximum success probability of probabilistic exact cloning for a
    pair with overlap sin 2xi: 1 / (1 + sin 2xi).

    The protocol saturates it: success_prob(xi, perfect_p(xi)) equals
    this bound while the clones reach unit fidelity.
    """
    return 1.0 / (1.0 + math.sin(2.0 * xi.xi))

"""Weak-measurement-assisted optimal cloning of two known qubit states.

The package models a three-stage protocol for a pair of nonorthogonal
pure states: a tunable weak measurement, post-selection on its "yes"
outcome, and a state-dependent symmetric 1-to-2 cloner applied to the
post-selected state.  Closed forms for every stage live alongside
brute-force and state-vector simulations that validate them.
"""

from .cloner import (
    CloneCoeffs,
    CloneIsometry,
    clone,
    clone_fidelity_sim,
    coeffs_from_b,
    fidelity_direct,
    fidelity_general,
    isometry,
)
from .errors import (
    CloningError,
    CoefficientOutOfRange,
    DegenerateOutcome,
    InvalidTrialCount,
    OrthogonalRegime,
)
from .optimal import (
    Optimum,
    brute_force_b,
    optimal_b_direct,
    optimal_b_general,
    optimal_fidelity,
    perfect_p,
)
from .protocol import (
    MonteCarloStats,
    PipelineReport,
    duan_guo_bound,
    monte_carlo,
    run_pipeline,
)
from .qmath import (
    ATOL,
    DensityMatrix,
    PureQubit,
    StateAngle,
    TwoQubitState,
    fidelity_pure,
    overlap,
    partial_trace,
    state_pair,
    tensor,
)
from .weakmeas import (
    KrausPair,
    MeasurementOutcome,
    Outcome,
    WeakStrength,
    effective_angle,
    kraus_pair,
    overlap_after,
    post_select_yes,
    sample_outcome,
    success_prob,
)

__version__ = "1.0.0"

__all__ = [
    "ATOL",
    "CloneCoeffs",
    "CloneIsometry",
    "CloningError",
    "CoefficientOutOfRange",
    "DegenerateOutcome",
    "DensityMatrix",
    "InvalidTrialCount",
    "KrausPair",
    "MeasurementOutcome",
    "MonteCarloStats",
    "Optimum",
    "OrthogonalRegime",
    "Outcome",
    "PipelineReport",
    "PureQubit",
    "StateAngle",
    "TwoQubitState",
    "WeakStrength",
    "brute_force_b",
    "clone",
    "clone_fidelity_sim",
    "coeffs_from_b",
    "duan_guo_bound",
    "effective_angle",
    "fidelity_direct",
    "fidelity_general",
    "fidelity_pure",
    "isometry",
    "kraus_pair",
    "monte_carlo",
    "optimal_b_direct",
    "optimal_b_general",
    "optimal_fidelity",
    "overlap",
    "overlap_after",
    "partial_trace",
    "perfect_p",
    "post_select_yes",
    "run_pipeline",
    "sample_outcome",
    "state_pair",
    "success_prob",
    "tensor",
]

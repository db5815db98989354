"""Weak-measurement pretreatment of the nonorthogonal state pair.

The measurement is a two-outcome Kraus pair built from the projectors
onto |+> and |->.  The "yes" operator keeps the |-> component intact and
dampens the |+> component by sqrt(p); the "no" operator collapses onto
|+>.  Because the state pair (cos xi, sin xi), (sin xi, cos xi) differs
only in its |-> component, post-selecting on "yes" amplifies that
difference and shrinks the pair's overlap, which is what lets the
downstream cloner do better than it could on the raw pair.

Strength convention: p = 1 means no measurement at all, p = 0 a full
projective measurement of |+> vs |->.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateOutcome, OrthogonalRegime
from .qmath import ATOL, PureQubit, StateAngle

_SQRT_HALF = math.sqrt(0.5)
_PLUS = np.array([_SQRT_HALF, _SQRT_HALF])
_MINUS = np.array([_SQRT_HALF, -_SQRT_HALF])
_PROJ_PLUS = np.outer(_PLUS, _PLUS)
_PROJ_MINUS = np.outer(_MINUS, _MINUS)

#: Outcome probabilities below this are treated as zero.
_PROB_FLOOR = 1e-15


@dataclass(frozen=True)
class WeakStrength:
    """Measurement strength p in [0, 1]."""

    p: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(
                f"measurement strength must lie in [0, 1], got {self.p!r}"
            )


@dataclass(frozen=True)
class KrausPair:
    """The two measurement operators; m_yes^T m_yes + m_no^T m_no = I."""

    m_yes: np.ndarray
    m_no: np.ndarray

    def __post_init__(self) -> None:
        m_yes = np.array(self.m_yes, dtype=float).reshape(2, 2)
        m_no = np.array(self.m_no, dtype=float).reshape(2, 2)
        m_yes.flags.writeable = False
        m_no.flags.writeable = False
        total = m_yes.T @ m_yes + m_no.T @ m_no
        if np.max(np.abs(total - np.eye(2))) > ATOL:
            raise ValueError("Kraus operators do not sum to the identity")
        object.__setattr__(self, "m_yes", m_yes)
        object.__setattr__(self, "m_no", m_no)


class Outcome(enum.Enum):
    """Label of the realized measurement branch."""

    YES = "yes"
    NO = "no"


@dataclass(frozen=True)
class MeasurementOutcome:
    """One sampled measurement result.

    Attributes
    ----------
    outcome:
        Which branch occurred.
    state:
        Normalized post-measurement state.
    probability:
        Born probability of the realized branch for the given input.
    """

    outcome: Outcome
    state: PureQubit
    probability: float


def kraus_pair(strength: WeakStrength) -> KrausPair:
    """Measurement operators for the given strength.

    m_yes = sqrt(p) |+><+| + |-><-|, m_no = sqrt(1 - p) |+><+|.
    """
    root_p = math.sqrt(strength.p)
    m_yes = root_p * _PROJ_PLUS + _PROJ_MINUS
    m_no = math.sqrt(1.0 - strength.p) * _PROJ_PLUS
    return KrausPair(m_yes, m_no)


def success_prob(xi: StateAngle, strength: WeakStrength) -> float:
    """Probability of the "yes" outcome on either member of the pair.

    Both members give the same value because they share the same |+>
    weight: p_yes = ((p - 1) sin 2xi + p + 1) / 2.
    """
    s = math.sin(2.0 * xi.xi)
    return 0.5 * ((strength.p - 1.0) * s + strength.p + 1.0)


def post_select_yes(
    state: PureQubit, strength: WeakStrength
) -> tuple[PureQubit, float]:
    """Apply m_yes to a state and renormalize.

    Returns the post-measurement state together with the probability of
    the "yes" branch.  Raises DegenerateOutcome when that probability
    vanishes (p = 0 on a pure |+> input).
    """
    v = kraus_pair(strength).m_yes @ state.vector
    prob = float(np.real(v.conj() @ v))
    if prob < _PROB_FLOOR:
        raise DegenerateOutcome(
            "the yes branch has zero probability for this input"
        )
    root = math.sqrt(prob)
    return PureQubit(v[0] / root, v[1] / root), prob


def overlap_after(xi: StateAngle, strength: WeakStrength) -> float:
    """Overlap of the state pair after post-selecting on "yes".

    Closed form ((p + 1) sin 2xi + p - 1) / ((p - 1) sin 2xi + p + 1).
    The value is negative when p is below the threshold (1 - sin 2xi) /
    (1 + sin 2xi): the measurement has pushed the pair past orthogonal.
    Raises DegenerateOutcome when the "yes" branch itself has zero
    probability.
    """
    s = math.sin(2.0 * xi.xi)
    p = strength.p
    denom = (p - 1.0) * s + p + 1.0
    if denom < 2.0 * _PROB_FLOOR:
        raise DegenerateOutcome(
            "the yes branch has zero probability for this state pair"
        )
    return ((p + 1.0) * s + p - 1.0) / denom


def effective_angle(xi: StateAngle, strength: WeakStrength) -> StateAngle:
    """Angle xi' whose pair reproduces the post-selected states.

    Defined through sin 2xi' = overlap_after(xi, strength).  Raises
    OrthogonalRegime when the post-selected overlap is negative, since
    no angle in [0, pi/4] produces it.
    """
    after = overlap_after(xi, strength)
    if after < 0.0:
        s = math.sin(2.0 * xi.xi)
        raise OrthogonalRegime(
            f"post-selected overlap {after!r} is negative; strength "
            f"{strength.p!r} is below the threshold {(1.0 - s) / (1.0 + s)!r}"
        )
    # round-off can push the ratio a hair above 1 when the pair is identical
    return StateAngle(0.5 * math.asin(min(after, 1.0)))


def sample_outcome(
    state: PureQubit, strength: WeakStrength, rng: np.random.Generator
) -> MeasurementOutcome:
    """Draw one measurement outcome for the given input state.

    Consumes exactly one uniform variate from ``rng``, so a run seeded
    with a fixed generator is reproducible.  Raises DegenerateOutcome if
    the sampled branch has no normalizable post-measurement state.
    """
    pair = kraus_pair(strength)
    v_yes = pair.m_yes @ state.vector
    prob_yes = float(np.real(v_yes.conj() @ v_yes))
    if rng.random() < prob_yes:
        if prob_yes < _PROB_FLOOR:
            raise DegenerateOutcome("sampled a zero-probability yes branch")
        root = math.sqrt(prob_yes)
        post = PureQubit(v_yes[0] / root, v_yes[1] / root)
        return MeasurementOutcome(Outcome.YES, post, prob_yes)
    v_no = pair.m_no @ state.vector
    prob_no = float(np.real(v_no.conj() @ v_no))
    if prob_no < _PROB_FLOOR:
        raise DegenerateOutcome("sampled a zero-probability no branch")
    root = math.sqrt(prob_no)
    post = PureQubit(v_no[0] / root, v_no[1] / root)
    return MeasurementOutcome(Outcome.NO, post, prob_no)

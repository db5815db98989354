"""Symmetric 1-to-2 cloning map for a known nonorthogonal state pair.

The cloner is the linear map |0>|0_blank> -> (a, b, b, c) and
|1>|0_blank> -> (c, b, b, a), written in the |00>, |01>, |10>, |11>
amplitude order.  With the constraints a^2 + 2 b^2 + c^2 = 1 and
a c + b^2 = 0 the map is an isometry, so it can be realized as a unitary
on a larger space.  The single free parameter b in [0, 1/2] controls the
trade-off between copying quality for the two members of the pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoefficientOutOfRange
from .qmath import (
    ATOL,
    PureQubit,
    StateAngle,
    TwoQubitState,
    fidelity_pure,
    partial_trace,
)


@dataclass(frozen=True)
class CloneCoeffs:
    """Map coefficients (a, b, c) satisfying the isometry constraints."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        norm = self.a**2 + 2.0 * self.b**2 + self.c**2
        if abs(norm - 1.0) > ATOL:
            raise ValueError(
                f"coefficients violate a^2 + 2b^2 + c^2 = 1: got {norm!r}"
            )
        cross = self.a * self.c + self.b**2
        if abs(cross) > ATOL:
            raise ValueError(
                f"coefficients violate a c + b^2 = 0: got {cross!r}"
            )


@dataclass(frozen=True)
class CloneIsometry:
    """4x2 matrix whose columns are the images of |00> and |10>."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=float).reshape(4, 2)
        matrix.flags.writeable = False
        gram = matrix.T @ matrix
        if np.max(np.abs(gram - np.eye(2))) > ATOL:
            raise ValueError("columns are not orthonormal")
        object.__setattr__(self, "matrix", matrix)


def coeffs_from_b(b: float) -> CloneCoeffs:
    """Coefficients for a given b, solving the isometry constraints.

    a = (sqrt(1 - 4 b^2) + 1) / 2 and c = a - 1.  Raises
    CoefficientOutOfRange unless 0 <= b <= 1/2.
    """
    if not 0.0 <= b <= 0.5:
        raise CoefficientOutOfRange(
            f"coefficient b must lie in [0, 1/2], got {b!r}"
        )
    root = math.sqrt(1.0 - 4.0 * b * b)
    return CloneCoeffs(0.5 * (root + 1.0), b, 0.5 * (root - 1.0))


def isometry(coeffs: CloneCoeffs) -> CloneIsometry:
    """Matrix form of the cloning map."""
    a, b, c = coeffs.a, coeffs.b, coeffs.c
    return CloneIsometry(np.array(
        [[a, c],
         [b, b],
         [b, b],
         [c, a]]
    ))


def clone(state: PureQubit, coeffs: CloneCoeffs) -> TwoQubitState:
    """Apply the cloning map to a single-qubit input."""
    return TwoQubitState(isometry(coeffs).matrix @ state.vector)


def clone_fidelity_sim(
    state: PureQubit, target: PureQubit, coeffs: CloneCoeffs
) -> float:
    """Fidelity of the first clone against a target state, by simulation.

    Runs the map on ``state``, traces out the second qubit and evaluates
    <target|rho|target>.  By the symmetry of the map the second clone
    gives the same value.
    """
    return fidelity_pure(partial_trace(clone(state, coeffs), 1), target)


def fidelity_direct(xi: StateAngle, coeffs: CloneCoeffs) -> float:
    """Per-clone fidelity when the pair with angle xi is cloned as is.

    Closed form of clone_fidelity_sim averaged over the two members of
    the pair (both give the same value), with each clone compared to the
    original input state.
    """
    a, b, c = coeffs.a, coeffs.b, coeffs.c
    s = math.sin(2.0 * xi.xi)
    c4 = math.cos(4.0 * xi.xi)
    return 0.25 * (
        3.0 * a * a
        + 4.0 * (a + b) * (b + c) * s
        + (a + c) * c4 * (a - 2.0 * b - c)
        + 2.0 * a * b
        + 4.0 * b * b
        + 2.0 * b * c
        + c * c
    )


def fidelity_general(
    xi: StateAngle, xi_prime: StateAngle, coeffs: CloneCoeffs
) -> float:
    """Per-clone fidelity when the cloner sees the pair with angle xi'
    but each clone is judged against the original pair with angle xi.

    Closed form (1 + (a + c)(cos 2xi cos 2xi'
    + 2 b sin 2xi (sin 2xi' + 1))) / 2.  Reduces to fidelity_direct when
    xi' = xi.
    """
    a, b, c = coeffs.a, coeffs.b, coeffs.c
    cc = math.cos(2.0 * xi.xi) * math.cos(2.0 * xi_prime.xi)
    ss = math.sin(2.0 * xi.xi) * (math.sin(2.0 * xi_prime.xi) + 1.0)
    return 0.5 * (1.0 + (a + c) * (cc + 2.0 * b * ss))

"""Linear algebra for one- and two-qubit pure states.

The types in this module are immutable value objects that validate their
own algebraic invariants on construction: a `PureQubit` is always unit
norm, a `DensityMatrix` is always Hermitian, unit trace and positive
semidefinite.  Amplitudes are stored as complex numbers even though the
nonorthogonal state family used elsewhere in this package is real, so
the partial trace and fidelity helpers stay fully general.

Two-qubit amplitudes are ordered |00>, |01>, |10>, |11> throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Absolute tolerance for the algebraic identities enforced below.  Every
#: check involves only a handful of floating point operations, so one
#: tight constant is enough.
ATOL = 1e-12

#: Norms (squared) below this cannot be renormalized meaningfully.
_NORM_FLOOR = 1e-15


@dataclass(frozen=True)
class StateAngle:
    """Angle xi parametrizing the nonorthogonal state pair, in radians.

    The pair is (cos xi, sin xi) and (sin xi, cos xi); xi = 0 gives an
    orthogonal pair, xi = pi/4 an identical one.
    """

    xi: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.xi <= math.pi / 4.0:
            raise ValueError(
                f"state angle must lie in [0, pi/4], got {self.xi!r}"
            )


@dataclass(frozen=True)
class PureQubit:
    """Single-qubit pure state amp0|0> + amp1|1> with unit norm."""

    amp0: complex
    amp1: complex

    def __post_init__(self) -> None:
        norm_sq = abs(self.amp0) ** 2 + abs(self.amp1) ** 2
        if abs(norm_sq - 1.0) > ATOL:
            raise ValueError(
                f"amplitudes are not normalized: |amp|^2 = {norm_sq!r}"
            )

    @classmethod
    def normalized(cls, amp0: complex, amp1: complex) -> "PureQubit":
        """Build a state from unnormalized amplitudes."""
        norm_sq = abs(amp0) ** 2 + abs(amp1) ** 2
        if norm_sq < _NORM_FLOOR:
            raise ValueError("cannot normalize a (near-)zero vector")
        norm = math.sqrt(norm_sq)
        return cls(amp0 / norm, amp1 / norm)

    @property
    def vector(self) -> np.ndarray:
        """Amplitudes as a length-2 complex array."""
        return np.array([self.amp0, self.amp1], dtype=complex)


@dataclass(frozen=True)
class TwoQubitState:
    """Two-qubit pure state; amplitudes ordered |00>, |01>, |10>, |11>."""

    amps: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amps, dtype=complex).reshape(4)
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @property
    def norm(self) -> float:
        """Euclidean norm of the amplitude vector."""
        return float(np.linalg.norm(self.amps))


@dataclass(frozen=True)
class DensityMatrix:
    """Single-qubit density matrix: Hermitian, unit trace, positive."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=complex).reshape(2, 2)
        entries.flags.writeable = False
        if np.max(np.abs(entries - entries.conj().T)) > ATOL:
            raise ValueError("density matrix is not Hermitian")
        trace = entries[0, 0].real + entries[1, 1].real
        if abs(trace - 1.0) > ATOL:
            raise ValueError(f"density matrix has trace {trace!r}, expected 1")
        # smallest eigenvalue of a 2x2 Hermitian matrix, in closed form
        det = entries[0, 0].real * entries[1, 1].real - abs(entries[0, 1]) ** 2
        lam_min = 0.5 * (trace - math.sqrt(max(trace * trace - 4.0 * det, 0.0)))
        if lam_min < -ATOL:
            raise ValueError(
                f"density matrix has negative eigenvalue {lam_min!r}"
            )
        object.__setattr__(self, "entries", entries)


def state_pair(xi: StateAngle) -> tuple[PureQubit, PureQubit]:
    """Return the two known nonorthogonal states for the given angle.

    The first is (cos xi, sin xi), the second (sin xi, cos xi).
    """
    c = math.cos(xi.xi)
    s = math.sin(xi.xi)
    return PureQubit(c, s), PureQubit(s, c)


def overlap(xi: StateAngle) -> float:
    """Inner product of the state pair, sin(2 xi)."""
    return math.sin(2.0 * xi.xi)


def tensor(first: PureQubit, second: PureQubit) -> TwoQubitState:
    """Product state |first>|second> in the fixed amplitude order."""
    return TwoQubitState(np.kron(first.vector, second.vector))


def partial_trace(state: TwoQubitState, keep: int) -> DensityMatrix:
    """Reduced density matrix of one subsystem of a two-qubit pure state.

    Parameters
    ----------
    state:
        Two-qubit state to reduce.
    keep:
        Which qubit to keep: 1 for the first, 2 for the second.
    """
    m = state.amps.reshape(2, 2)
    if keep == 1:
        rho = m @ m.conj().T
    elif keep == 2:
        rho = m.T @ m.conj()
    else:
        raise ValueError(f"keep must be 1 or 2, got {keep!r}")
    return DensityMatrix(rho)


def fidelity_pure(rho: DensityMatrix, target: PureQubit) -> float:
    """Fidelity <target|rho|target>, clamped into [0, 1] against round-off."""
    v = target.vector
    value = float(np.real(v.conj() @ (rho.entries @ v)))
    return min(max(value, 0.0), 1.0)

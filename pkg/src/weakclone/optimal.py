"""Optimal cloning coefficients: closed forms and a brute-force oracle.

For fixed angles the per-clone fidelity depends on the single parameter
b through f(b) = (1 + sqrt(1 - 4 b^2) (C + 2 b S)) / 2 with
C = cos 2xi cos 2xi' and S = sin 2xi (1 + sin 2xi').  Setting the
derivative to zero gives 8 S b^2 + 2 C b - S = 0, whose root in [0, 1/2]
is the optimum.  The closed forms below are written in rationalized form
(no cancelling cosecants), so they stay finite as xi -> 0.

brute_force_b shares no algebra with the closed forms: it scans a dense
grid of b values and refines with a golden-section search, and exists to
cross-check them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cloner import CloneCoeffs, coeffs_from_b, fidelity_general
from .qmath import StateAngle
from .weakmeas import WeakStrength

_GRID_POINTS = 10001
_GOLDEN_TOL = 1e-10
_INV_PHI = 0.5 * (math.sqrt(5.0) - 1.0)

#: Below this angle the literal optimal-b formula divides two vanishing
#: quantities; the limit is 0 (an orthogonal pair needs no hedging).
_XI_FLOOR = 1e-8


@dataclass(frozen=True)
class Optimum:
    """Result of an optimization over b."""

    b_star: float
    coeffs: CloneCoeffs
    fidelity: float


def _fidelity_terms(xi: StateAngle, xi_prime: StateAngle) -> tuple[float, float]:
    """The two angle-dependent factors C and S of the fidelity."""
    cc = math.cos(2.0 * xi.xi) * math.cos(2.0 * xi_prime.xi)
    ss = math.sin(2.0 * xi.xi) * (1.0 + math.sin(2.0 * xi_prime.xi))
    return cc, ss


def _fidelity_of_b(b, cc: float, ss: float):
    """Fidelity as a function of b alone; accepts scalars or arrays.

    Same quantity as fidelity_general(xi, xi', coeffs_from_b(b)), kept
    in terms of C and S so the grid scan can run vectorized.  A test
    pins the two routes together.
    """
    return 0.5 * (1.0 + np.sqrt(1.0 - 4.0 * b * b) * (cc + 2.0 * b * ss))


def optimal_b_direct(xi: StateAngle) -> float:
    """Optimal b when the pair with angle xi is cloned as is.

    Literal closed form (1 - csc 2xi + csc 2xi sqrt(9 sin^2 2xi
    - 2 sin 2xi + 1)) / 8.  For xi below 1e-8 the two csc terms cancel
    to working precision and the limit 0 is returned instead.
    """
    if xi.xi < _XI_FLOOR:
        return 0.0
    s = math.sin(2.0 * xi.xi)
    csc = 1.0 / s
    return 0.125 * (1.0 - csc + csc * math.sqrt(9.0 * s * s - 2.0 * s + 1.0))


def optimal_b_general(xi: StateAngle, xi_prime: StateAngle) -> float:
    """Optimal b when the cloner sees angle xi' but is judged at xi.

    Root of 8 S b^2 + 2 C b - S = 0 in [0, 1/2], written as
    S / (C + sqrt(C^2 + 8 S^2)) so that it degrades gracefully to 0 as
    S -> 0.  Equals optimal_b_direct(xi) when xi' = xi.
    """
    cc, ss = _fidelity_terms(xi, xi_prime)
    if ss == 0.0:
        return 0.0
    return ss / (cc + math.sqrt(cc * cc + 8.0 * ss * ss))


def optimal_fidelity(xi: StateAngle, xi_prime: StateAngle) -> float:
    """Fidelity at the optimal b, in closed form.

    Substituting the optimal b into the fidelity and simplifying gives
    1/2 + (3 C + D) sqrt(2 (4 S^2 - C^2 + C D)) / (32 S) with
    D = sqrt(C^2 + 8 S^2).  That radicand factors as
    8 S^2 (3 C + D) / (C + D), so S cancels and the expression becomes
    1/2 + sqrt(2) (3 C + D)^{3/2} / (16 sqrt(C + D)), which stays
    accurate as S -> 0 where the literal form loses all its digits.
    When C = S = 0 the fidelity is flat at 1/2.
    """
    cc, ss = _fidelity_terms(xi, xi_prime)
    if cc == 0.0 and ss == 0.0:
        return 0.5
    dd = math.sqrt(cc * cc + 8.0 * ss * ss)
    top = 3.0 * cc + dd
    value = 0.5 + math.sqrt(2.0) * top * math.sqrt(top) / (16.0 * math.sqrt(cc + dd))
    return min(value, 1.0)  # round-off can overshoot 1 where the pair matches


def brute_force_b(xi: StateAngle, xi_prime: StateAngle) -> Optimum:
    """Numerical maximization of the fidelity over b in [0, 1/2].

    Dense 10001-point grid scan followed by golden-section refinement of
    the bracketing interval down to width 1e-10.  Ties resolve toward
    smaller b.  Independent of the closed forms above, which it serves
    to validate.
    """
    cc, ss = _fidelity_terms(xi, xi_prime)
    grid = np.linspace(0.0, 0.5, _GRID_POINTS)
    values = _fidelity_of_b(grid, cc, ss)
    best = int(np.argmax(values))  # first hit on a tie: smaller b wins
    step = 0.5 / (_GRID_POINTS - 1)
    lo = max(0.0, grid[best] - step)
    hi = min(0.5, grid[best] + step)
    x1 = hi - _INV_PHI * (hi - lo)
    x2 = lo + _INV_PHI * (hi - lo)
    f1 = _fidelity_of_b(x1, cc, ss)
    f2 = _fidelity_of_b(x2, cc, ss)
    while hi - lo > _GOLDEN_TOL:
        if f1 >= f2:  # keep the left interval on a tie
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_PHI * (hi - lo)
            f1 = _fidelity_of_b(x1, cc, ss)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_PHI * (hi - lo)
            f2 = _fidelity_of_b(x2, cc, ss)
    b_star = 0.5 * (lo + hi)
    coeffs = coeffs_from_b(b_star)
    return Optimum(b_star, coeffs, fidelity_general(xi, xi_prime, coeffs))


def perfect_p(xi: StateAngle) -> WeakStrength:
    """Measurement strength that makes perfect cloning possible.

    Solves overlap_after(xi, p) = sin^2 2xi, the point where the
    intermediate pair satisfies the unit-fidelity condition:
    p = (1 + sin^2 2xi) / (1 + sin 2xi)^2.
    """
    s = math.sin(2.0 * xi.xi)
    return WeakStrength((1.0 + s * s) / ((1.0 + s) * (1.0 + s)))

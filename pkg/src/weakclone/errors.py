"""Exception types shared across the package."""


class CloningError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateOutcome(CloningError):
    """A measurement branch has (near-)zero probability and its
    post-measurement state cannot be normalized."""


class OrthogonalRegime(CloningError):
    """The weak measurement drove the state pair past orthogonality
    (negative intermediate overlap), outside the regime covered by the
    cloning formulas."""


class CoefficientOutOfRange(CloningError, ValueError):
    """Requested cloning coefficient b lies outside [0, 1/2]."""


class InvalidTrialCount(CloningError, ValueError):
    """Monte Carlo run requested with fewer than one trial."""

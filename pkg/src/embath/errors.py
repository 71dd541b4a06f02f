"""Exception types shared across the package."""


class EmbathError(Exception):
    """Base class for all package errors."""


class DomainError(EmbathError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Polygamma argument at (or within machine tolerance of) a pole."""


class OrderError(EmbathError, ValueError):
    """Unsupported polygamma order."""


class ValidationError(EmbathError, ValueError):
    """Invalid physical parameters."""


class ConvergenceError(EmbathError, RuntimeError):
    """A numerical oracle failed to meet its tolerance."""


class TailBoundError(ConvergenceError):
    """Truncation tail estimate of a semi-infinite integral exceeds tolerance."""


class NoSteadyStateError(EmbathError, RuntimeError):
    """Moment drift is not Hurwitz; no stationary Gaussian state exists."""


class StiffnessError(EmbathError, RuntimeError):
    """Adaptive integrator step collapsed below the allowed minimum."""


class DimensionError(EmbathError, ValueError):
    """Number-basis truncation dimension too small."""


class TruncationError(EmbathError, RuntimeError):
    """Gaussian state does not fit in the requested number-basis truncation."""

"""Exceptions raised by starnls."""


class StarNLSError(Exception):
    """Base class for all starnls errors."""


class ValidationError(StarNLSError, ValueError):
    """A graph or branch parameter violates its constraints."""


class InvalidGraph(ValidationError):
    """The graph has fewer than two edges or a nonpositive power."""


class ZeroAlpha(ValidationError):
    """The vertex strength is zero (Kirchhoff vertex, not supported)."""


class BranchOutOfRange(ValidationError):
    """The branch index K exceeds floor((N - 1) / 2) or is negative."""


class BelowThreshold(ValidationError):
    """The frequency does not exceed the existence threshold of the branch."""


class InvalidScale(ValidationError):
    """A rescaling factor is not strictly positive."""


class LambdaAboveOmega(StarNLSError, ValueError):
    """The spectral parameter is not below the continuum edge omega."""


class ZeroDenominator(StarNLSError, ArithmeticError):
    """A logarithmic derivative was requested at a zero of the solution."""


class BracketFailure(StarNLSError, RuntimeError):
    """No sign change was found where one must exist."""


class NoZero(StarNLSError):
    """The decaying solution has no zero for the requested spectral parameter."""


class VertexMismatch(StarNLSError, ValueError):
    """Edge values of a field disagree at the vertex."""


class DomainTooShort(StarNLSError, ValueError):
    """The truncated edge is too short for the profile to have decayed."""


class SingularShift(StarNLSError, ArithmeticError):
    """A shifted pencil produced a vanishing pivot."""


class MaxCountExceeded(StarNLSError, RuntimeError):
    """More eigenvalues lie below the bound than were requested."""


class SolverFailure(StarNLSError, RuntimeError):
    """A linear solve did not reach the required residual."""

"""Exception types raised across the library."""


class HenonLabError(Exception):
    """Base class for all library errors."""


class SubcriticalError(HenonLabError):
    """Parameters violate the subcriticality condition required for a solve."""


class HorizonExceededError(HenonLabError):
    """The requested zero was not reached within the (doubled) integration horizon."""


class CrossCheckMismatchError(HenonLabError):
    """Two independent solution routes disagree beyond tolerance."""


class VariableMismatchError(HenonLabError):
    """A profile was passed in the wrong radial variable (r vs t)."""


class DomainError(HenonLabError):
    """An input value lies outside the admissible domain."""


class MeshTooCoarseError(HenonLabError):
    """The eigenproblem mesh does not resolve the profile's nodal structure."""


class NotConvergedError(HenonLabError):
    """An iterative eigenvalue search failed to reach its target width."""


class ZeroPieceError(HenonLabError):
    """A nodal piece is (numerically) identically zero."""


class NotPositiveSolutionError(HenonLabError):
    """A positive (one-nodal-set) profile was required but the input has interior zeros."""


class InvalidArgsError(HenonLabError):
    """Arguments are structurally invalid for the requested operation."""

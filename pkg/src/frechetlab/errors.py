"""Exception types shared across the library."""


class FrechetlabError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(FrechetlabError):
    """A point, step vector or variable index has the wrong arity."""


class InvalidWindowError(FrechetlabError):
    """An enumeration window or rectangle is empty or degenerate."""


class InvalidGridError(FrechetlabError):
    """An interpolation grid violates its invariants (zero step, zero direction)."""


class InconsistentDecompositionError(FrechetlabError):
    """Two supposedly identical computations of the same polynomial disagree.

    This signals an internal bug (e.g. a broken shear decomposition), never
    bad user input.
    """


class ModelParseError(FrechetlabError):
    """A model / polynomial / scalar text could not be parsed."""

"""Exception hierarchy shared by every module."""


class UpirError(Exception):
    """Base class for all library errors."""


class DimensionError(UpirError, ValueError):
    """Shapes or ambient dimensions do not match, or a table is malformed."""


class ParseError(UpirError, ValueError):
    """An algebra document could not be parsed."""


class AxiomError(UpirError, ValueError):
    """A structure table violates the restricted Lie algebra axioms."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class NotAnIdeal(UpirError, ValueError):
    """A subspace expected to be a (restricted) ideal or subalgebra is not."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CapExceeded(UpirError):
    """A configured size or enumeration budget would be exceeded."""


class InternalCheckFailed(UpirError, AssertionError):
    """A self-check that must always hold did not (signals a bug)."""

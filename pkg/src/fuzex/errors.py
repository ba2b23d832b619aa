"""Exception hierarchy shared across the package."""


class FuzexError(Exception):
    """Base class for all package errors."""


class ParameterError(FuzexError, ValueError):
    """Dimensions or parameters are inconsistent with an operation."""


class CapacityError(ParameterError):
    """A message does not fit the declared MAC capacity."""


class DigestMismatch(ParameterError):
    """Helper data or a CRS was produced for different parameters."""


class FormatError(FuzexError, ValueError):
    """A serialized object is truncated, malformed or of the wrong kind."""


class ProtocolError(FuzexError, RuntimeError):
    """An adversary broke the rules of a security game."""

"""
Error Types Module

Exceptions raised by the library. The CLI maps them onto exit codes.
"""


class FockDualityError(Exception):
    """Base class for all library errors."""


class DimensionGuardError(FockDualityError):
    """A requested space is larger than the configured guard allows."""


class ModeIndexError(FockDualityError, IndexError):
    """A mode (p, tau) lies outside the (d, k) range of a state."""


class DimensionMismatchError(FockDualityError, ValueError):
    """Operands were built for different (d, k) or tensor shapes."""


class InvalidDiagramError(FockDualityError, ValueError):
    """A Young diagram is malformed or outside the admissible family."""


class BasisError(FockDualityError):
    """An operator image leaves the span of the supplied basis."""


class ConsistencyError(FockDualityError):
    """An internal invariant failed; signals a construction bug."""

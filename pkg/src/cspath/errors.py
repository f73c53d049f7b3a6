"""Exception types shared across the package."""


class CspathError(Exception):
    """Base class for all library errors."""


class FormatError(CspathError):
    """A graph file could not be parsed or is structurally inconsistent."""


class CycleError(CspathError):
    """An operation requiring an acyclic graph found a cycle."""


class UnreachableError(CspathError):
    """The target vertex cannot be reached from the source."""


class OracleOverflowError(CspathError):
    """The exact solver exceeded its label budget (never a wrong answer)."""


class SamplingError(CspathError):
    """Instance sampling exhausted its retry budget."""

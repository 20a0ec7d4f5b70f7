"""Exception types shared across the package."""


class PrimetrailError(Exception):
    """Base class for all package-specific errors."""


class RangeError(PrimetrailError, ValueError):
    """Input outside the supported numeric range."""


class CoverageError(PrimetrailError, ValueError):
    """Supplied table or log does not cover the requested range."""


class SequencingError(PrimetrailError, ValueError):
    """Segments or checkpoints consumed out of order."""


class CheckpointFormatError(PrimetrailError, ValueError):
    """Malformed checkpoint file; `field` names the offending key."""

    def __init__(self, field: str, message: str):
        super().__init__(f"checkpoint field {field!r}: {message}")
        self.field = field


class ConsistencyError(PrimetrailError, RuntimeError):
    """Two independent evaluation routes disagreed beyond tolerance."""

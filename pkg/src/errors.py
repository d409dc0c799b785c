"""
Exception hierarchy for the Tor-algebra classifier.
Every error raised on purpose by the library derives from TorClassifierError.
"""

from typing import Optional


class TorClassifierError(Exception):
    """Base class for all library errors."""


class DimensionError(TorClassifierError, ValueError):
    """Matrix or vector shapes do not fit together."""


class DegreeError(TorClassifierError, ValueError):
    """A graded operation was called with incompatible degrees."""


class IdealInputError(TorClassifierError, ValueError):
    """Generators, truncation, modulus or file contents are unusable."""


class ParameterRangeError(TorClassifierError, ValueError):
    """Numerical parameters fall outside the range a result applies to."""


class ShapeNotApplicableError(TorClassifierError, ValueError):
    """No closed-form Betti table is known for the requested parameters."""


class GenericityError(TorClassifierError, RuntimeError):
    """Random generation kept failing a genericity condition."""

    def __init__(self, message: str, attempts: int, reason: Optional[str] = None):
        super().__init__(message)
        self.attempts = attempts
        self.reason = reason

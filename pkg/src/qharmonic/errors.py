"""Exception hierarchy.

Every error raised deliberately by the package derives from
:class:`QHarmonicError`, and each one also subclasses the closest built-in
so callers can catch ``ValueError`` / ``ArithmeticError`` if they prefer.
"""


__all__ = [
    "QHarmonicError",
    "DomainError",
    "PoleError",
    "ResolventPoleError",
    "NearSingularError",
    "DivergenceError",
    "NonCommutingError",
    "ContourError",
    "SpectrumError",
    "HypothesisError",
    "DimensionError",
    "ConfigError",
]


class QHarmonicError(Exception):
    """Base class for all package errors."""


class DomainError(QHarmonicError, ValueError):
    """Argument outside the set where an operation is defined."""


class PoleError(QHarmonicError, ArithmeticError):
    """A kernel was evaluated on (or too close to) its singular sphere."""


class ResolventPoleError(PoleError):
    """``Q_{c,s}(T)`` is singular or numerically singular at ``s``."""


class NearSingularError(QHarmonicError, ArithmeticError):
    """Matrix inversion refused because the condition number is too large."""


class DivergenceError(QHarmonicError, ValueError):
    """A power series was requested outside its disc of convergence."""


class NonCommutingError(QHarmonicError, ValueError):
    """Operator components fail the commutation check."""


class ContourError(QHarmonicError, ValueError):
    """Invalid slice Cauchy domain or contour placement."""


class SpectrumError(QHarmonicError, ValueError):
    """The S-spectrum is not enclosed (or not split) as the operation needs."""


class HypothesisError(QHarmonicError, ValueError):
    """A structural hypothesis of a theorem is violated by the input."""


class DimensionError(QHarmonicError, ValueError):
    """Incompatible matrix sizes."""


class ConfigError(QHarmonicError, ValueError):
    """Malformed command-line or file configuration."""

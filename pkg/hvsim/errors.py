"""
Exception types raised by hvsim.

Check failures in scenario reports are data, not exceptions; these types cover
bad input, degenerate geometry and numerical corruption.
"""


class HvsimError(Exception):
    """Base class for all hvsim errors."""


class InvalidArgumentError(HvsimError, ValueError):
    """An argument violates an operation's precondition."""


class DegenerateConfigurationError(HvsimError, ValueError):
    """Collinear vectors where an operation divides by |b - b'| or |b + b'|."""


class NumericalResidueError(HvsimError, ArithmeticError):
    """An expectation value carries an imaginary part above tolerance."""


class ConfigurationError(HvsimError):
    """A scenario configuration cannot be used (usage error, exit code 2)."""

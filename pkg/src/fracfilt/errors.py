"""Exception hierarchy shared across the package.

Numeric routines raise subclasses of :class:`FracfiltError` so callers can
catch one family of failures without swallowing programming errors.  The
classes double-inherit from the builtin they most resemble (``ValueError``
for bad inputs, ``RuntimeError`` for algorithmic failures) so existing
``except ValueError`` style code keeps working.
"""


class FracfiltError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(FracfiltError, ValueError):
    """Parameter combination rejected before any computation starts."""


class PoleError(FracfiltError, ValueError):
    """Evaluation requested exactly at a pole of the function."""


class DomainError(FracfiltError, ValueError):
    """Argument outside the region where the implementation is reliable."""


class ConvergenceError(FracfiltError, RuntimeError):
    """An iteration or quadrature failed to reach the requested accuracy."""


class GrowthError(FracfiltError, RuntimeError):
    """An integrand grew instead of decaying, so the tail cannot be bounded."""

"""Typed errors shared across the package.

Monte Carlo drivers are expected to catch :class:`LocalizationError` and count
failure frequency instead of aborting a whole study.
"""


class DomainError(ValueError):
    """A function left its admissible range (non-positive density, etc.)."""


class RangeError(ValueError):
    """An argument lies outside the validity region of a bound or map."""


class PreconditionError(ValueError):
    """A structural precondition (index window, size guard) is violated."""


class LocalizationError(RuntimeError):
    """The localized covariance is not usable (not PD, contraction >= 1)."""


class ConfigurationError(ValueError):
    """A configuration asks for something numerically meaningless."""


class TermBudgetError(RuntimeError):
    """A symbolic expansion would exceed the configured term budget."""


class SingularMatrixError(RuntimeError):
    """A symmetric matrix is numerically singular where an inverse is needed."""

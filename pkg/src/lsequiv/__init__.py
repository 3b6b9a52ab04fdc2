"""Gaussian-equivalence toolkit for locally stationary quadratic statistics.

Subpackage map: spectral (function system and densities), circulant
(coefficient algebra behind the matrix-to-function map), basis_cov
(covariance operators and their band projections), gaussianize (localized
summaries), cltcheck (characteristic-function analysis), whitenoise (the
limiting experiment), harness (schedules, studies, divergences), cli.
"""

from .errors import (
    ConfigurationError,
    DomainError,
    LocalizationError,
    PreconditionError,
    RangeError,
    SingularMatrixError,
    TermBudgetError,
)
from .harness import (
    GaussianDivergences,
    RunConfig,
    Schedule,
    condition_checker,
    gaussian_divergences,
    run_equivalence_chain,
    run_risk_study,
    run_tv_decay,
    run_verify,
    schedule,
)
from .report import CheckResult, VerificationReport
from .spectral import BasisIndex, SpectralDensity, default_grid, random_density

__version__ = "0.1.0"

__all__ = [
    "BasisIndex",
    "CheckResult",
    "ConfigurationError",
    "DomainError",
    "GaussianDivergences",
    "LocalizationError",
    "PreconditionError",
    "RangeError",
    "RunConfig",
    "Schedule",
    "SingularMatrixError",
    "SpectralDensity",
    "TermBudgetError",
    "VerificationReport",
    "condition_checker",
    "default_grid",
    "gaussian_divergences",
    "random_density",
    "run_equivalence_chain",
    "run_risk_study",
    "run_tv_decay",
    "run_verify",
    "schedule",
    "__version__",
]

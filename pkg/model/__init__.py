"""Volatility curves and the noisy observation model."""

from model.curves import (
    cell_variance,
    cell_variances,
    counterexample_curve,
    counterexample_signal,
    eval_sigma2,
    integrated_variance_at,
    sigma_max,
    sigma_moment,
)
from model.errors import (
    ConfigurationError,
    CurveSpecError,
    DomainError,
    EstimationError,
    SpectralVolError,
)
from model.schemas import CurveKind, ObservationSeries, VolatilityCurve
from model.simulation import simulate_observations

__all__ = [
    "ConfigurationError",
    "CurveKind",
    "CurveSpecError",
    "DomainError",
    "EstimationError",
    "ObservationSeries",
    "SpectralVolError",
    "VolatilityCurve",
    "cell_variance",
    "cell_variances",
    "counterexample_curve",
    "counterexample_signal",
    "eval_sigma2",
    "integrated_variance_at",
    "sigma_max",
    "sigma_moment",
    "simulate_observations",
]

"""Localized trigonometric system and block spectral statistics."""

from spectral.basis import basis_eval, block_weights, discrete_weights
from spectral.cache import WeightCache, get_weight_cache
from spectral.grid import BlockGrid
from spectral.statistics import (
    SpectralCoefficients,
    compute_spectral_stats,
    noise_variances,
    theoretical_variance,
)

__all__ = [
    "BlockGrid",
    "SpectralCoefficients",
    "WeightCache",
    "basis_eval",
    "block_weights",
    "compute_spectral_stats",
    "discrete_weights",
    "get_weight_cache",
    "noise_variances",
    "theoretical_variance",
]

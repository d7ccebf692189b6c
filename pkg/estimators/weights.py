"""Local-likelihood weights over frequencies."""

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

from model.errors import DomainError
from model.schemas import VolatilityCurve
from spectral.grid import BlockGrid


def frequency_offsets(h0: float, J: int) -> NDArray[np.float64]:
    """Noise offsets h₀⁻²π²j² for j = 1..J (zero for noise-free data)."""
    if not h0 > 0.0:
        raise DomainError(f"spectral scale h0 must be positive, got {h0}")
    j = np.arange(1, J + 1, dtype=float)
    return np.asarray(math.pi**2 * j**2 / h0**2, dtype=float)


def compute_weights(spot: ArrayLike, h0: float, J: int) -> NDArray[np.float64]:
    """
    Weights w^J_jk ∝ (σ²(kh) + h₀⁻²π²j²)⁻², normalized over j = 1..J.

    Args:
        spot: Per-block spot variances, all positive
        h0: Spectral scale h√n/δ (infinite for noise-free data, giving uniform weights)
        J: Frequency cut-off

    Returns:
        J×blocks matrix whose columns sum to one
    """
    values = np.asarray(spot, dtype=float)
    if values.ndim != 1:
        raise DomainError("spot values must be a vector with one entry per block")
    if J < 1:
        raise DomainError(f"frequency cut-off must be at least 1, got {J}")
    if not np.all(np.isfinite(values)) or np.any(values <= 0.0):
        raise DomainError("spot variances must be finite and strictly positive")

    offsets = frequency_offsets(h0, J)
    raw = (values[None, :] + offsets[:, None]) ** -2
    return np.asarray(raw / raw.sum(axis=0, keepdims=True), dtype=float)


def oracle_spot(curve: VolatilityCurve, grid: BlockGrid) -> NDArray[np.float64]:
    """Block averages h⁻¹∫σ² of the true curve, one per block."""
    edges = np.arange(grid.blocks + 1) / grid.blocks
    return np.asarray(np.diff(curve.variance_antiderivative(edges)) * grid.blocks, dtype=float)

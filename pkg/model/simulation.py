"""Exact simulation of the noisy observation model Y_i = X_{i/n} + ε_i."""

import logging
from typing import Optional

import numpy as np
from numpy.typing import NDArray
from scipy.special import ndtri

from model.curves import cell_variances
from model.errors import DomainError
from model.schemas import ObservationSeries, VolatilityCurve

logger = logging.getLogger(__name__)

_MANTISSA = 2**53


def standard_normals(rng: np.random.Generator, size: int) -> NDArray[np.float64]:
    """
    Draw standard normals by inverting the Gaussian CDF.

    Uniforms are built from 53-bit integers shifted by one half, so they lie strictly inside
    (0, 1) and the inverse CDF never returns an infinite value.

    Args:
        rng: Generator to consume
        size: Number of draws

    Returns:
        Array of independent N(0, 1) samples
    """
    raw = rng.integers(0, _MANTISSA, size=size, dtype=np.int64)
    uniforms = (raw.astype(np.float64) + 0.5) / _MANTISSA
    return np.asarray(ndtri(uniforms), dtype=float)


def make_generator(seed: Optional[int]) -> np.random.Generator:
    """PCG64 generator for a 64-bit seed token (fresh entropy when ``seed`` is None)."""
    if seed is not None and not 0 <= seed < 2**64:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def simulate_observations(
    curve: VolatilityCurve,
    n: int,
    delta: float,
    seed: Optional[int] = None,
) -> ObservationSeries:
    """
    Simulate n noisy observations of the efficient price.

    Increments of X are drawn exactly as centered Gaussians with the cell variances of the
    curve, so the path carries no discretization error. The generator first produces the
    n increment normals and then the n noise normals.

    Args:
        curve: Volatility curve
        n: Number of observations
        delta: Noise standard deviation (0 gives the pure diffusion)
        seed: 64-bit reproducibility token

    Returns:
        ObservationSeries with Y_i = X_{i/n} + ε_i
    """
    if n < 1:
        raise DomainError(f"sample count must be positive, got {n}")
    if delta < 0.0 or not np.isfinite(delta):
        raise DomainError(f"noise level must be finite and nonnegative, got {delta}")

    rng = make_generator(seed)
    variances = cell_variances(curve, n)
    increments = np.sqrt(np.maximum(variances, 0.0)) * standard_normals(rng, n)
    noise = delta * standard_normals(rng, n)
    values = np.cumsum(increments) + noise

    logger.debug("Simulated %d observations (delta=%g, seed=%s)", n, delta, seed)
    return ObservationSeries(n=n, delta=float(delta), values=values, seed=seed)

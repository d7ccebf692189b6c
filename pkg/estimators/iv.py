"""Feasible efficient integrated volatility estimator and its variants."""

import logging
import math
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from estimators.config import EstimatorConfig, SpotKernel, WeightMode
from estimators.mle import mle_refine
from estimators.schemas import IvEstimate, SpotEstimate
from estimators.spot import block_responses, neighbour_responses, spot_box, spot_local_linear
from estimators.weights import compute_weights, frequency_offsets, oracle_spot
from model.curves import sigma_max, sigma_moment
from model.errors import ConfigurationError, DomainError
from model.schemas import ObservationSeries, VolatilityCurve
from spectral.grid import BlockGrid
from spectral.statistics import SpectralCoefficients, compute_spectral_stats

logger = logging.getLogger(__name__)


def _check_compatible(stats: SpectralCoefficients, config: EstimatorConfig) -> None:
    if stats.grid != config.grid:
        raise ConfigurationError(
            f"statistics grid {stats.grid.to_dict()} does not match the configured grid"
        )
    if stats.J != config.J:
        raise ConfigurationError(f"statistics carry J={stats.J}, configuration J={config.J}")
    if not math.isclose(stats.delta, config.delta, rel_tol=1e-12, abs_tol=0.0):
        raise ConfigurationError(
            f"statistics noise level {stats.delta} differs from configured {config.delta}"
        )


def asymptotic_sd(curve: VolatilityCurve, delta: float, n: int) -> float:
    """
    Efficient asymptotic standard deviation n^{-1/4}√(8δ∫σ³).

    Args:
        curve: True volatility curve
        delta: Noise standard deviation
        n: Sample count

    Returns:
        Standard deviation of the efficient estimator
    """
    if delta < 0.0 or n < 1:
        raise DomainError("noise level must be nonnegative and n positive")
    return n**-0.25 * math.sqrt(8.0 * delta * sigma_moment(curve, 3))


def finite_sample_sd(spot: ArrayLike, grid: BlockGrid, delta: float, J: int) -> float:
    """
    Standard deviation of the oracle-weight estimator in the block Gaussian model.

    With I_k = Σ_{j≤J} (σ²_k + h₀⁻²π²j²)⁻², the variance is Σ_k 2h²/I_k.

    Args:
        spot: Per-block variances σ²_k
        grid: Block grid
        delta: Noise standard deviation
        J: Frequency cut-off

    Returns:
        Standard deviation
    """
    values = np.asarray(spot, dtype=float)
    h0 = math.inf if delta == 0.0 else grid.h * math.sqrt(grid.n) / delta
    offsets = frequency_offsets(h0, J)
    information = np.sum((values[None, :] + offsets[:, None]) ** -2, axis=0)
    return math.sqrt(math.fsum((2.0 * grid.h**2 / information).tolist()))


def default_cutoff(curve: VolatilityCurve, grid: BlockGrid, delta: float) -> int:
    """
    Frequency cut-off J = min(⌈2σ̄h/(πδ)⌉, n·h) with σ̄ the grid maximum of σ.

    The rule is evaluated literally in the units of its inputs and clipped to [1, n·h].
    """
    m = grid.block_size
    if delta == 0.0:
        return m
    raw = math.ceil(2.0 * sigma_max(curve) * grid.h / (math.pi * delta))
    return int(min(max(raw, 1), m))


def estimate_iv(
    stats: SpectralCoefficients,
    weights: ArrayLike,
    config: EstimatorConfig,
    reference_curve: Optional[VolatilityCurve] = None,
) -> IvEstimate:
    """
    Compute ÎV = Σ_k h Σ_j w_jk h⁻²π²j²((y⁰_jk)² - ν_jk).

    Args:
        stats: Spectral statistics
        weights: J×blocks weight matrix
        config: Estimator configuration
        reference_curve: True curve, fills the asymptotic and finite-sample sd

    Returns:
        IvEstimate
    """
    _check_compatible(stats, config)
    w = np.asarray(weights, dtype=float)
    if w.shape != stats.values.shape:
        raise ConfigurationError(
            f"weights have shape {w.shape}, statistics have {stats.values.shape}"
        )
    per_block = np.sum(w * block_responses(stats, config.bias_correction), axis=0)
    iv_hat = config.h * math.fsum(per_block.tolist())
    return _build_estimate(iv_hat, config, reference_curve)


def _build_estimate(
    iv_hat: float,
    config: EstimatorConfig,
    reference_curve: Optional[VolatilityCurve],
    mle_converged: Optional[int] = None,
) -> IvEstimate:
    if reference_curve is None:
        return IvEstimate(iv_hat=iv_hat, config=config.to_dict(), mle_converged=mle_converged)
    return IvEstimate(
        iv_hat=iv_hat,
        config=config.to_dict(),
        asymptotic_sd=asymptotic_sd(reference_curve, config.delta, config.n),
        finite_sample_sd=finite_sample_sd(
            oracle_spot(reference_curve, config.grid), config.grid, config.delta, config.J
        ),
        true_value=sigma_moment(reference_curve, 2),
        mle_converged=mle_converged,
    )


def spot_pre_estimate(stats: SpectralCoefficients, config: EstimatorConfig) -> SpotEstimate:
    """Spot pre-estimate on the estimator grid with the configured smoother."""
    smoother = spot_box if config.spot_kernel is SpotKernel.BOX else spot_local_linear
    return smoother(
        stats,
        config.spot_bandwidth,
        config.bias_correction,
        leave_out=config.spot_leave_out,
        floor=config.spot_floor,
    )


def estimate_iv_mle(
    stats: SpectralCoefficients,
    init: ArrayLike,
    config: EstimatorConfig,
    newton: bool = False,
    reference_curve: Optional[VolatilityCurve] = None,
) -> IvEstimate:
    """
    Integrated volatility with weights from local maximum-likelihood spot variances.

    For block k the estimating equation is solved from ``init[k]`` on the responses pooled
    over the neighbouring blocks within the spot bandwidth, block k left out. The refined
    variances give the weights w^J_jk, which then average the responses of block k itself.

    Args:
        stats: Spectral statistics
        init: Per-block starting variances, positive
        config: Estimator configuration
        newton: Single Newton step per block instead of the fixed-point iteration
        reference_curve: True curve for the sd fields

    Returns:
        IvEstimate with the number of converged blocks
    """
    _check_compatible(stats, config)
    start = np.asarray(init, dtype=float)
    if start.shape != (stats.grid.blocks,):
        raise ConfigurationError(f"expected {stats.grid.blocks} initial values, got {start.shape}")
    pooled = neighbour_responses(stats, config.spot_bandwidth, config.bias_correction)
    results = [
        mle_refine(pooled[:, k], float(start[k]), config, newton) for k in range(start.size)
    ]
    converged = sum(result.converged for result in results)
    logger.debug("Refined %d of %d blocks to convergence", converged, len(results))
    spot = np.array([result.value for result in results])
    weights = compute_weights(spot, config.h0, config.J)
    per_block = np.sum(weights * block_responses(stats, config.bias_correction), axis=0)
    iv_hat = config.h * math.fsum(per_block.tolist())
    return _build_estimate(iv_hat, config, reference_curve, mle_converged=converged)


def weights_for(
    stats: SpectralCoefficients,
    config: EstimatorConfig,
    reference_curve: Optional[VolatilityCurve] = None,
) -> NDArray[np.float64]:
    """Weight matrix for the configured adaptive or oracle mode."""
    if config.weight_mode is WeightMode.ORACLE:
        if reference_curve is None:
            raise ConfigurationError("oracle weights need the true curve")
        spot = oracle_spot(reference_curve, config.grid)
    else:
        spot = spot_pre_estimate(stats, config).values
    return compute_weights(spot, config.h0, config.J)


def estimate_from_observations(
    obs: ObservationSeries,
    config: EstimatorConfig,
    reference_curve: Optional[VolatilityCurve] = None,
) -> IvEstimate:
    """
    Run the full pipeline: statistics, spot pre-estimate, weights and the IV estimate.

    Args:
        obs: Observation series
        config: Estimator configuration
        reference_curve: True curve; required for oracle weights and fills the sd fields

    Returns:
        IvEstimate
    """
    stats = compute_spectral_stats(obs, config.grid, config.J)
    if config.weight_mode is WeightMode.MLE:
        init = spot_pre_estimate(stats, config).values
        return estimate_iv_mle(stats, init, config, config.newton, reference_curve)
    weights = weights_for(stats, config, reference_curve)
    return estimate_iv(stats, weights, config, reference_curve)

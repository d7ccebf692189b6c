"""Spot volatility pre-estimation from the first-frequency block statistics."""

import logging
import math
from typing import Optional, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from estimators.config import BiasCorrection, SpotKernel
from estimators.schemas import SpotEstimate
from model.errors import DomainError, EstimationError
from spectral.statistics import SpectralCoefficients, noise_variances

logger = logging.getLogger(__name__)

# Centers closer than this count as tied when testing the local design
_DESIGN_TOL = 1e-12

# Absolute floor when no estimate is positive
MIN_SPOT_FLOOR = 1e-8


def block_responses(
    stats: SpectralCoefficients,
    correction: Union[BiasCorrection, str] = BiasCorrection.PAPER,
) -> NDArray[np.float64]:
    """
    Per-frequency unbiased responses r_jk = h⁻²π²j²((y⁰_jk)² - ν_jk).

    Args:
        stats: Spectral statistics
        correction: ``paper`` subtracts ν = δ²/n, ``exact`` the discrete noise variance

    Returns:
        J×blocks matrix of responses
    """
    correction = BiasCorrection(correction)
    if correction is BiasCorrection.EXACT:
        nu = noise_variances(stats.grid, stats.J, stats.delta)
    else:
        nu = np.full(stats.values.shape, stats.eps2)
    j = np.arange(1, stats.J + 1, dtype=float)[:, None]
    scale = math.pi**2 * j**2 / stats.grid.h**2
    return np.asarray(scale * (stats.values**2 - nu), dtype=float)


def spot_block_estimate(
    stats: SpectralCoefficients,
    t: float,
    b: float,
    correction: Union[BiasCorrection, str] = BiasCorrection.PAPER,
    exclude: Optional[int] = None,
) -> float:
    """
    Box-kernel spot estimate: mean first-frequency response of blocks centered within b of t.

    Args:
        stats: Spectral statistics
        t: Time in [0, 1]
        b: Bandwidth
        correction: Noise correction mode
        exclude: Optional block index left out of the window

    Returns:
        Estimate of σ²(t)
    """
    if b <= 0.0:
        raise DomainError(f"bandwidth must be positive, got {b}")
    responses = block_responses(stats, correction)[0]
    distance = np.abs(stats.grid.centers - t)
    window = np.flatnonzero(distance <= b + _DESIGN_TOL)
    if exclude is not None:
        window = window[window != exclude]
    if window.size == 0:
        raise EstimationError(f"no block center lies within {b} of t={t}")
    return math.fsum(responses[window].tolist()) / window.size


def local_linear_smooth(
    x: ArrayLike,
    y: ArrayLike,
    points: ArrayLike,
    bandwidth: float,
    leave_out: bool = False,
) -> NDArray[np.float64]:
    """
    Local-linear regression of y on x with the Epanechnikov kernel 3/4(1 - u²), |u| < 1.

    Each fit centers the covariate at the evaluation point and solves the whitened least
    squares problem, so the intercept is the fitted value.

    Args:
        x: Design points
        y: Responses
        points: Evaluation points
        bandwidth: Kernel half-width
        leave_out: When set, evaluation point i ignores observation i (points must equal x)

    Returns:
        Fitted values at ``points``
    """
    x_arr = np.asarray(x, dtype=float)
    y_arr = np.asarray(y, dtype=float)
    at = np.asarray(points, dtype=float)
    if leave_out and at.shape != x_arr.shape:
        raise DomainError("leave-out smoothing evaluates at the design points only")
    if bandwidth <= 0.0:
        raise DomainError(f"bandwidth must be positive, got {bandwidth}")

    fitted = np.empty(at.shape[0])
    for i, x0 in enumerate(at):
        dx = x_arr - x0
        u = dx / bandwidth
        w = np.where(np.abs(u) < 1.0, 0.75 * (1.0 - u * u), 0.0)
        if leave_out:
            w[i] = 0.0
        active = w > 0.0
        support = x_arr[active]
        if support.size < 2 or np.ptp(support) <= _DESIGN_TOL:
            raise EstimationError(
                f"local design at {x0:.6g} is singular: fewer than two distinct points in window"
            )
        root = np.sqrt(w[active])
        design = np.column_stack([root, dx[active] * root])
        params, *_ = np.linalg.lstsq(design, y_arr[active] * root, rcond=None)
        fitted[i] = params[0]
    return fitted


def floor_spot(values: ArrayLike, floor: Optional[float] = None) -> NDArray[np.float64]:
    """
    Floor spot variances before they enter the weights.

    The default floor is max(smallest positive value·10⁻³, 10⁻⁸).

    Args:
        values: Spot variance estimates
        floor: Explicit floor, overriding the default rule

    Returns:
        Floored copy of ``values``
    """
    arr = np.asarray(values, dtype=float)
    if floor is None:
        positive = arr[arr > 0.0]
        floor = MIN_SPOT_FLOOR
        if positive.size:
            floor = max(float(positive.min()) * 1e-3, MIN_SPOT_FLOOR)
    clipped = int(np.count_nonzero(arr < floor))
    if clipped:
        logger.debug("Floored %d spot values at %g", clipped, floor)
    return np.maximum(arr, floor)


def spot_local_linear(
    stats: SpectralCoefficients,
    b: float,
    correction: Union[BiasCorrection, str] = BiasCorrection.PAPER,
    leave_out: bool = False,
    floor: Optional[float] = None,
) -> SpotEstimate:
    """
    Local-linear smoothing of the first-frequency responses over block centers.

    Args:
        stats: Spectral statistics
        b: Bandwidth
        correction: Noise correction mode
        leave_out: Fit the value at block k without block k
        floor: Explicit floor; the default rule of :func:`floor_spot` otherwise

    Returns:
        SpotEstimate at every block center
    """
    centers = stats.grid.centers
    responses = block_responses(stats, correction)[0]
    values = local_linear_smooth(centers, responses, centers, b, leave_out=leave_out)
    return SpotEstimate(
        centers=centers,
        values=floor_spot(values, floor),
        bandwidth=b,
        kernel=SpotKernel.LOCAL_LINEAR.value,
    )


def spot_box(
    stats: SpectralCoefficients,
    b: float,
    correction: Union[BiasCorrection, str] = BiasCorrection.PAPER,
    leave_out: bool = False,
    floor: Optional[float] = None,
) -> SpotEstimate:
    """Box-kernel spot estimates at every block center."""
    centers = stats.grid.centers
    values = np.array(
        [
            spot_block_estimate(stats, t, b, correction, exclude=k if leave_out else None)
            for k, t in enumerate(centers)
        ]
    )
    return SpotEstimate(
        centers=centers,
        values=floor_spot(values, floor),
        bandwidth=b,
        kernel=SpotKernel.BOX.value,
    )


def neighbour_responses(
    stats: SpectralCoefficients,
    b: float,
    correction: Union[BiasCorrection, str] = BiasCorrection.PAPER,
) -> NDArray[np.float64]:
    """
    Mean responses of every frequency over the blocks centered within b of block k, k excluded.

    Column k never uses the statistics of block k.

    Args:
        stats: Spectral statistics
        b: Bandwidth
        correction: Noise correction mode

    Returns:
        J×blocks matrix of pooled responses
    """
    if b <= 0.0:
        raise DomainError(f"bandwidth must be positive, got {b}")
    responses = block_responses(stats, correction)
    centers = stats.grid.centers
    pooled = np.empty_like(responses)
    for k, t in enumerate(centers):
        window = np.flatnonzero(np.abs(centers - t) <= b + _DESIGN_TOL)
        window = window[window != k]
        if window.size == 0:
            raise EstimationError(f"no neighbouring block center lies within {b} of t={t}")
        pooled[:, k] = responses[:, window].mean(axis=1)
    return pooled

"""Localized cosine basis φ_jk, its antiderivatives Φ_jk and the discrete increment weights."""

import logging
import math

import numpy as np
from numpy.typing import NDArray
from scipy.special import cosdg, sindg

from model.errors import ConfigurationError, DomainError
from spectral.cache import get_weight_cache
from spectral.grid import BlockGrid

logger = logging.getLogger(__name__)


def basis_eval(j: int, k: int, h: float, t: float) -> tuple[float, float]:
    """
    Evaluate φ_jk(t) = √2 h^{-1/2} cos(jπ(t-kh)/h) and Φ_jk(t) = √(2h)/(πj) sin(jπ(t-kh)/h).

    Both vanish outside the block [kh, (k+1)h].

    Args:
        j: Frequency, j >= 1
        k: Block index, 0 <= k <= 1/h - 1
        h: Block length with 1/h an integer
        t: Time

    Returns:
        Tuple (φ_jk(t), Φ_jk(t))
    """
    if j < 1:
        raise DomainError(f"frequency must be at least 1, got {j}")
    if not 0.0 < h <= 1.0:
        raise DomainError(f"block length must lie in (0, 1], got {h}")
    blocks = round(1.0 / h)
    if not 0 <= k < blocks:
        raise DomainError(f"block index must satisfy 0 <= k < {blocks}, got {k}")

    start = k * h
    if not start <= t <= start + h:
        return 0.0, 0.0
    # phase measured in degrees so that multiples of a quarter turn are exact
    degrees = 180.0 * j * (t - start) / h
    phi = math.sqrt(2.0 / h) * float(cosdg(degrees))
    big_phi = math.sqrt(2.0 * h) / (math.pi * j) * float(sindg(degrees))
    return phi, big_phi


def _compute_block_weights(j_max: int, grid: BlockGrid) -> NDArray[np.float64]:
    m = grid.block_size
    j = np.arange(1, j_max + 1)[:, None]
    ell = np.arange(0, m + 1)[None, :]
    # reduce j·l modulo 2m in integers before converting to an angle
    angles = 180.0 * ((j * ell) % (2 * m)) / m
    cosines = cosdg(angles)
    scale = grid.n * math.sqrt(2.0 * grid.h) * grid.h / (math.pi**2 * j.astype(float) ** 2)
    return np.asarray(scale * np.diff(cosines, axis=1), dtype=float)


def block_weights(j_max: int, grid: BlockGrid) -> NDArray[np.float64]:
    """
    In-block weights c_l for frequencies 1..j_max.

    Row j-1 holds c_1..c_m with
    c_l = n√(2h)h/(π²j²)·(cos(jπl/m) - cos(jπ(l-1)/m)); the weights are identical for every
    block, so one matrix serves the whole grid.

    Args:
        j_max: Number of frequencies
        grid: Block grid

    Returns:
        Read-only j_max×m matrix
    """
    if j_max < 1:
        raise ConfigurationError(f"frequency cut-off must be at least 1, got {j_max}")
    cache = get_weight_cache()
    cached = cache.get(grid.n, grid.blocks, j_max)
    if cached is not None:
        return cached

    logger.debug("Computing %d weight rows for grid n=%d, blocks=%d", j_max, grid.n, grid.blocks)
    matrix = _compute_block_weights(j_max, grid)
    matrix.setflags(write=False)
    cache.set(grid.n, grid.blocks, matrix)
    return matrix


def discrete_weights(j: int, k: int, grid: BlockGrid) -> NDArray[np.float64]:
    """
    Full weight vector c_1..c_n of y⁰_jk, c_i = -n∫Φ_jk over the i-th cell.

    Args:
        j: Frequency, j >= 1
        k: Block index
        grid: Block grid

    Returns:
        Length-n vector, zero outside block k
    """
    if j < 1:
        raise DomainError(f"frequency must be at least 1, got {j}")
    if not 0 <= k < grid.blocks:
        raise DomainError(f"block index must satisfy 0 <= k < {grid.blocks}, got {k}")
    m = grid.block_size
    weights = np.zeros(grid.n)
    weights[k * m : (k + 1) * m] = _compute_block_weights(j, grid)[j - 1]
    return weights

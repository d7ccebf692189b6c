"""Block spectral statistics y⁰_jk and their variances."""

import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray

from model.errors import ConfigurationError, DomainError
from model.schemas import ObservationSeries
from spectral.basis import block_weights
from spectral.grid import BlockGrid


@dataclass(frozen=True, eq=False)
class SpectralCoefficients:
    """
    Matrix of block statistics y⁰_jk.

    ``values[j-1, k]`` holds frequency j on block k; the array is read-only.
    """

    values: NDArray[np.float64]
    grid: BlockGrid
    delta: float

    def __post_init__(self) -> None:
        """Validate shape and finiteness."""
        values = np.array(self.values, dtype=float)
        if values.ndim != 2 or values.shape[1] != self.grid.blocks or values.shape[0] < 1:
            raise ConfigurationError(
                f"statistics must be a J×{self.grid.blocks} matrix, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise DomainError("spectral statistics must be finite")
        if self.delta < 0.0 or not np.isfinite(self.delta):
            raise DomainError("noise level delta must be finite and nonnegative")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def J(self) -> int:
        return int(self.values.shape[0])

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def eps2(self) -> float:
        """Squared noise level on the block scale, ε² = δ²/n."""
        return self.delta**2 / self.n

    def to_dict(self) -> dict[str, Any]:
        return {
            "J": self.J,
            "delta": self.delta,
            "grid": self.grid.to_dict(),
            "values": self.values.tolist(),
        }


def _check_cutoff(J: int, grid: BlockGrid) -> None:
    if J < 1:
        raise ConfigurationError(f"frequency cut-off must be at least 1, got {J}")
    if J > grid.block_size:
        raise ConfigurationError(
            f"frequency cut-off J={J} exceeds the {grid.block_size} samples per block"
        )


def compute_spectral_stats(
    obs: ObservationSeries, grid: BlockGrid, J: int
) -> SpectralCoefficients:
    """
    Compute y⁰_jk = Σ_i c_i (Y_i - Y_{i-1}) with Y_0 := 0.

    Args:
        obs: Observation series
        grid: Block grid with grid.n == obs.n
        J: Frequency cut-off, 1 <= J <= n·h

    Returns:
        SpectralCoefficients of shape J×blocks
    """
    if obs.n != grid.n:
        raise ConfigurationError(f"grid expects {grid.n} observations, series has {obs.n}")
    _check_cutoff(J, grid)
    weights = block_weights(J, grid)
    increments = obs.increments().reshape(grid.blocks, grid.block_size)
    return SpectralCoefficients(values=weights @ increments.T, grid=grid, delta=obs.delta)


def noise_variances(grid: BlockGrid, J: int, delta: float) -> NDArray[np.float64]:
    """
    Exact noise variance of every y⁰_jk under i.i.d. N(0, δ²) noise.

    Within a block the noise enters as Σ_l ε_l (c_l - c_{l+1}) with c_{m+1} = 0. Blocks k >= 1
    also pick up -c_1 ε from the increment straddling the block edge; block 0 does not since
    Y_0 := 0.

    Args:
        grid: Block grid
        J: Frequency cut-off
        delta: Noise standard deviation

    Returns:
        J×blocks matrix of variances
    """
    if delta < 0.0:
        raise DomainError(f"noise level must be nonnegative, got {delta}")
    _check_cutoff(J, grid)
    weights = block_weights(J, grid)
    padded = np.concatenate([weights, np.zeros((J, 1))], axis=1)
    interior = np.sum(np.diff(padded, axis=1) ** 2, axis=1)
    edge = weights[:, 0] ** 2
    result = np.tile((interior + edge)[:, None], (1, grid.blocks))
    result[:, 0] = interior
    return np.asarray(delta**2 * result, dtype=float)


def theoretical_variance(sigma2: float, j: int, h: float, eps: float) -> float:
    """
    Idealized variance of y_jk: h²j⁻²π⁻²σ² + ε².

    Args:
        sigma2: Block variance level
        j: Frequency
        h: Block length
        eps: Noise level ε = δ/√n

    Returns:
        Variance of the statistic
    """
    if sigma2 < 0.0 or eps < 0.0:
        raise DomainError("variance level and noise level must be nonnegative")
    if j < 1:
        raise DomainError(f"frequency must be at least 1, got {j}")
    return h * h * sigma2 / (j * j * math.pi**2) + eps * eps

"""Efficiency calculators: single-frequency optimum and globally tuned estimators."""

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from model.curves import sigma_moment
from model.errors import DomainError
from model.schemas import VolatilityCurve


def optimal_information(sigma0: float) -> float:
    """Full-spectrum information limit σ₀⁻³/8 per unit of spectral scale."""
    if not sigma0 > 0.0:
        raise DomainError(f"sigma0 must be positive, got {sigma0}")
    return 1.0 / (8.0 * sigma0**3)


def single_freq_information(sigma0: float, h0: float) -> float:
    """Information per unit scale from the first frequency alone, h₀³/(2(π² + h₀²σ₀²)²)."""
    if not sigma0 > 0.0 or not h0 > 0.0:
        raise DomainError("sigma0 and h0 must be positive")
    return h0**3 / (2.0 * (math.pi**2 + h0**2 * sigma0**2) ** 2)


def grid_argmax_single_freq(
    sigma0: float, upper: float = 100.0, step: float = 1e-3
) -> tuple[float, float]:
    """
    Brute-force maximizer of the single-frequency information over h₀ ∈ (0, upper].

    Returns:
        Tuple (h0, information) at the best grid point
    """
    if not upper > 0.0 or not step > 0.0:
        raise DomainError("grid upper bound and step must be positive")
    grid = np.arange(1, int(round(upper / step)) + 1) * step
    values = grid**3 / (2.0 * (math.pi**2 + grid**2 * sigma0**2) ** 2)
    best = int(np.argmax(values))
    return float(grid[best]), float(values[best])


@dataclass(frozen=True)
class SingleFrequencyOptimum:
    """Best block scale when only the first frequency is used."""

    sigma0: float
    h0_star: float
    info_star: float
    efficiency: float
    grid_h0_star: float
    grid_info_star: float

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "sigma0": self.sigma0,
            "h0_star": self.h0_star,
            "info_star": self.info_star,
            "efficiency": self.efficiency,
            "grid_h0_star": self.grid_h0_star,
            "grid_info_star": self.grid_info_star,
        }


def single_freq_optimum(sigma0: float) -> SingleFrequencyOptimum:
    """
    Closed-form single-frequency optimum with a grid cross-check.

    h₀* = √3π/σ₀, info* = 3^{3/2}/(32π)·σ₀⁻³ and the efficiency √(info*/(σ₀⁻³/8)).

    Args:
        sigma0: Local volatility level σ₀ > 0

    Returns:
        SingleFrequencyOptimum
    """
    if not sigma0 > 0.0:
        raise DomainError(f"sigma0 must be positive, got {sigma0}")
    h0_star = math.sqrt(3.0) * math.pi / sigma0
    info_star = 3.0**1.5 / (32.0 * math.pi) / sigma0**3
    grid_h0, grid_info = grid_argmax_single_freq(sigma0, upper=max(100.0, 4.0 * h0_star))
    return SingleFrequencyOptimum(
        sigma0=sigma0,
        h0_star=h0_star,
        info_star=info_star,
        efficiency=math.sqrt(info_star / optimal_information(sigma0)),
        grid_h0_star=grid_h0,
        grid_info_star=grid_info,
    )


def global_tuning_ratio(curve: VolatilityCurve) -> float:
    """
    RMSE inflation ((∫σ⁴)^{3/4}/∫σ³)^{1/2} of an optimally but globally tuned estimator.

    Equals one exactly for constant curves (Jensen's inequality gives ≥ 1 otherwise).
    """
    return math.sqrt(sigma_moment(curve, 4) ** 0.75 / sigma_moment(curve, 3))


def power_variation_variance(curve: VolatilityCurve, p: float, delta: float) -> float:
    """
    Efficient asymptotic variance 2p²δ∫σ^{2p-1} for estimating ∫σ^p at rate n^{-1/4}.

    p = 2 recovers 8δ∫σ³ of the integrated volatility.
    """
    if delta < 0.0:
        raise DomainError(f"noise level must be nonnegative, got {delta}")
    if not p > 0.0:
        raise DomainError(f"power must be positive, got {p}")
    return 2.0 * p * p * delta * sigma_moment(curve, 2.0 * p - 1.0)


def efficiency_table(curve: VolatilityCurve) -> dict[str, float]:
    """Moments of a curve together with the global tuning ratio."""
    return {
        "integrated_variance": sigma_moment(curve, 2),
        "integrated_sigma3": sigma_moment(curve, 3),
        "quarticity": sigma_moment(curve, 4),
        "global_tuning_ratio": global_tuning_ratio(curve),
    }

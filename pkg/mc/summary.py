"""Summary statistics of Monte Carlo replicates."""

import math
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from model.errors import DomainError

QUANTILE_LEVELS = (0.05, 0.25, 0.5, 0.75, 0.95)


@dataclass(frozen=True)
class McReport:
    """Summary of a Monte Carlo study."""

    reps: int
    mean: float
    bias: float
    sd: float
    rmse: float
    rmse_se: float
    quantiles: dict[str, float]
    true_value: float
    asymptotic_sd: Optional[float] = None
    config: dict[str, Any] = field(default_factory=dict)
    wall_time: Optional[float] = None
    estimates: tuple[float, ...] = field(default=(), repr=False)

    @property
    def rmse_over_asymptotic(self) -> Optional[float]:
        if not self.asymptotic_sd:
            return None
        return self.rmse / self.asymptotic_sd

    def to_dict(self, include_wall_time: bool = False) -> dict[str, Any]:
        """
        Convert to dictionary.

        Args:
            include_wall_time: Add the measured wall time (breaks byte-identical reports)

        Returns:
            Report as a JSON-ready mapping
        """
        result: dict[str, Any] = {
            "reps": self.reps,
            "true_value": self.true_value,
            "mean": self.mean,
            "bias": self.bias,
            "sd": self.sd,
            "rmse": self.rmse,
            "rmse_se": self.rmse_se,
            "asymptotic_sd": self.asymptotic_sd,
            "rmse_over_asymptotic": self.rmse_over_asymptotic,
            "quantiles": dict(self.quantiles),
            "config": self.config,
        }
        if include_wall_time:
            result["wall_time"] = self.wall_time
        return result


def _quantile_key(level: float) -> str:
    return f"q{round(level * 100):02d}"


def summarize(
    samples: ArrayLike,
    true_value: float,
    asymptotic_sd: Optional[float] = None,
    config: Optional[dict[str, Any]] = None,
    wall_time: Optional[float] = None,
) -> McReport:
    """
    Summarize replicate estimates against the true value.

    Sums are exactly rounded, so the result does not depend on how the samples were produced.

    Args:
        samples: Replicate estimates in replicate order
        true_value: Estimand
        asymptotic_sd: Reference standard deviation for the RMSE ratio
        config: Configuration echo
        wall_time: Measured run time in seconds

    Returns:
        McReport
    """
    values: NDArray[np.float64] = np.asarray(samples, dtype=float).ravel()
    reps = int(values.size)
    if reps == 0:
        raise DomainError("cannot summarize an empty sample")

    mean = math.fsum(values.tolist()) / reps
    deviations = values - mean
    sd = math.sqrt(math.fsum((deviations**2).tolist()) / (reps - 1)) if reps > 1 else 0.0
    squared_errors = (values - true_value) ** 2
    mse = math.fsum(squared_errors.tolist()) / reps
    rmse = math.sqrt(mse)

    rmse_se = 0.0
    if reps > 1 and rmse > 0.0:
        spread = math.fsum(((squared_errors - mse) ** 2).tolist()) / (reps - 1)
        rmse_se = math.sqrt(spread / reps) / (2.0 * rmse)

    levels: Sequence[float] = QUANTILE_LEVELS
    quantile_values = np.quantile(values, levels, method="linear")
    return McReport(
        reps=reps,
        mean=mean,
        bias=mean - true_value,
        sd=sd,
        rmse=rmse,
        rmse_se=rmse_se,
        quantiles={_quantile_key(q): float(v) for q, v in zip(levels, quantile_values)},
        true_value=true_value,
        asymptotic_sd=asymptotic_sd,
        config=config or {},
        wall_time=wall_time,
        estimates=tuple(float(v) for v in values),
    )

"""Result types of the estimators."""

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np
from numpy.typing import NDArray

from model.errors import EstimationError


@dataclass(frozen=True, eq=False)
class SpotEstimate:
    """Spot variance estimates σ̂² evaluated at block centers."""

    centers: NDArray[np.float64]
    values: NDArray[np.float64]
    bandwidth: float
    kernel: str = "local-linear"

    def __post_init__(self) -> None:
        """Validate the estimate."""
        centers = np.array(self.centers, dtype=float)
        values = np.array(self.values, dtype=float)
        if centers.shape != values.shape:
            raise EstimationError("spot values must match the block centers")
        if not np.all(np.isfinite(values)):
            raise EstimationError("spot estimates must be finite")
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "values", values)

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "bandwidth": self.bandwidth,
            "kernel": self.kernel,
            "centers": self.centers.tolist(),
            "values": self.values.tolist(),
        }


@dataclass(frozen=True)
class IvEstimate:
    """Integrated volatility estimate with its configuration echo."""

    iv_hat: float
    config: dict[str, Any] = field(default_factory=dict)
    asymptotic_sd: Optional[float] = None
    finite_sample_sd: Optional[float] = None
    true_value: Optional[float] = None
    mle_converged: Optional[int] = None

    def __post_init__(self) -> None:
        """Validate the estimate."""
        if not np.isfinite(self.iv_hat):
            raise EstimationError("integrated volatility estimate is not finite")

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        result: dict[str, Any] = {
            "iv_hat": self.iv_hat,
            "asymptotic_sd": self.asymptotic_sd,
            "config": self.config,
        }
        if self.finite_sample_sd is not None:
            result["finite_sample_sd"] = self.finite_sample_sd
        if self.true_value is not None:
            result["true_value"] = self.true_value
        if self.mle_converged is not None:
            result["mle_converged_blocks"] = self.mle_converged
        return result

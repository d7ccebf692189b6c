"""Estimator configuration."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional

from model.errors import ConfigurationError, DomainError
from spectral.grid import BlockGrid


class WeightMode(str, Enum):
    """Source of the spot variances entering the local-likelihood weights."""

    ADAPTIVE = "adaptive"
    ORACLE = "oracle"
    MLE = "mle"


class BiasCorrection(str, Enum):
    """Noise correction subtracted from the squared statistics."""

    PAPER = "paper"
    EXACT = "exact"


class SpotKernel(str, Enum):
    """Smoother used for the spot pre-estimate."""

    BOX = "box"
    LOCAL_LINEAR = "local-linear"


# Leave-out box window used for the weights unless configured otherwise
DEFAULT_SPOT_BANDWIDTH = 0.35


def _coerce(enum_type: type[Enum], value: Any, field_name: str) -> Any:
    try:
        return enum_type(value)
    except ValueError as e:
        choices = ", ".join(str(member.value) for member in enum_type)
        raise ConfigurationError(f"{field_name} must be one of {choices}, got '{value}'") from e


@dataclass(frozen=True)
class EstimatorConfig:
    """
    Settings of the spectral integrated-volatility estimator.

    ``h0`` is derived as h√n/δ and is infinite for noise-free data.
    """

    grid: BlockGrid
    J: int
    delta: float
    weight_mode: WeightMode = WeightMode.ADAPTIVE
    bias_correction: BiasCorrection = BiasCorrection.PAPER
    spot_bandwidth: float = DEFAULT_SPOT_BANDWIDTH
    spot_kernel: SpotKernel = SpotKernel.BOX
    spot_leave_out: bool = True
    spot_floor: Optional[float] = None
    newton: bool = False

    def __post_init__(self) -> None:
        """Validate and normalize fields."""
        object.__setattr__(self, "weight_mode", _coerce(WeightMode, self.weight_mode, "weights"))
        object.__setattr__(
            self,
            "bias_correction",
            _coerce(BiasCorrection, self.bias_correction, "bias_correction"),
        )
        object.__setattr__(
            self, "spot_kernel", _coerce(SpotKernel, self.spot_kernel, "spot_kernel")
        )
        if self.J < 1:
            raise ConfigurationError(f"frequency cut-off must be at least 1, got {self.J}")
        if self.J > self.grid.block_size:
            raise ConfigurationError(
                f"frequency cut-off J={self.J} exceeds the "
                f"{self.grid.block_size} samples per block"
            )
        if self.delta < 0.0 or not math.isfinite(self.delta):
            raise DomainError(f"noise level must be finite and nonnegative, got {self.delta}")
        if not 0.0 < self.spot_bandwidth <= 1.0:
            raise ConfigurationError(
                f"spot bandwidth must lie in (0, 1], got {self.spot_bandwidth}"
            )
        if self.spot_floor is not None and not self.spot_floor > 0.0:
            raise DomainError(f"spot floor must be positive, got {self.spot_floor}")

    @property
    def h(self) -> float:
        return self.grid.h

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def h0(self) -> float:
        """Spectral scale h√n/δ."""
        if self.delta == 0.0:
            return math.inf
        return self.grid.h * math.sqrt(self.grid.n) / self.delta

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "n": self.grid.n,
            "blocks": self.grid.blocks,
            "h": self.grid.h,
            "J": self.J,
            "delta": self.delta,
            "h0": self.h0 if math.isfinite(self.h0) else None,
            "weight_mode": self.weight_mode.value,
            "bias_correction": self.bias_correction.value,
            "spot_bandwidth": self.spot_bandwidth,
            "spot_kernel": self.spot_kernel.value,
            "spot_leave_out": self.spot_leave_out,
            "spot_floor": self.spot_floor,
            "newton": self.newton,
        }

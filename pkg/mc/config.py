"""Monte Carlo study configuration."""

from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Optional, Union

from estimators.config import DEFAULT_SPOT_BANDWIDTH, EstimatorConfig, SpotKernel
from mc.seeding import MASK64
from model.curve_spec import parse_curve_spec
from model.errors import ConfigurationError
from model.schemas import VolatilityCurve
from spectral.grid import BlockGrid
from storage.csv_store import read_json

DEFAULT_REPS = 2000


@dataclass(frozen=True)
class McConfig:
    """
    One Monte Carlo study: curve, sampling design, estimator options and replication plan.

    ``threads`` is an execution hint only; it is left out of :meth:`to_dict` because results
    do not depend on it.
    """

    curve: str
    n: int
    delta: float
    blocks: int
    J: int
    reps: int = DEFAULT_REPS
    base_seed: int = 0
    weight_mode: str = "adaptive"
    bias_correction: str = "paper"
    spot_bandwidth: float = DEFAULT_SPOT_BANDWIDTH
    spot_kernel: str = SpotKernel.BOX.value
    spot_leave_out: bool = True
    spot_floor: Optional[float] = None
    newton: bool = False
    threads: int = 1
    parsed_curve: VolatilityCurve = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        """Validate everything a run needs before any replicate starts."""
        if self.reps < 1:
            raise ConfigurationError(f"reps must be at least 1, got {self.reps}")
        if self.threads < 1:
            raise ConfigurationError(f"threads must be at least 1, got {self.threads}")
        if not 0 <= self.base_seed <= MASK64:
            raise ConfigurationError(
                f"base_seed must be a 64-bit unsigned integer, got {self.base_seed}"
            )
        object.__setattr__(self, "parsed_curve", parse_curve_spec(self.curve))
        self.estimator_config()

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "McConfig":
        """
        Build a configuration from a JSON object.

        Args:
            data: Mapping with at least curve, n, delta, blocks and J

        Returns:
            McConfig
        """
        allowed = {f.name for f in fields(cls) if f.init}
        unknown = sorted(set(data) - allowed)
        if unknown:
            raise ConfigurationError(f"unknown McConfig fields: {', '.join(unknown)}")
        missing = sorted({"curve", "n", "delta", "blocks", "J"} - set(data))
        if missing:
            raise ConfigurationError(f"missing McConfig fields: {', '.join(missing)}")
        if not isinstance(data["curve"], str):
            raise ConfigurationError("McConfig curve must be a curve spec string")
        try:
            return cls(**data)
        except (TypeError, AttributeError) as e:
            raise ConfigurationError(f"invalid McConfig: {e}") from e

    def estimator_config(self) -> EstimatorConfig:
        return EstimatorConfig(
            grid=BlockGrid(n=self.n, blocks=self.blocks),
            J=self.J,
            delta=self.delta,
            weight_mode=self.weight_mode,
            bias_correction=self.bias_correction,
            spot_bandwidth=self.spot_bandwidth,
            spot_kernel=self.spot_kernel,
            spot_leave_out=self.spot_leave_out,
            spot_floor=self.spot_floor,
            newton=self.newton,
        )

    def to_dict(self) -> dict[str, Any]:
        """Configuration echo without the thread hint."""
        return {
            "curve": self.curve,
            "n": self.n,
            "delta": self.delta,
            "blocks": self.blocks,
            "J": self.J,
            "reps": self.reps,
            "base_seed": self.base_seed,
            "weight_mode": self.weight_mode,
            "bias_correction": self.bias_correction,
            "spot_bandwidth": self.spot_bandwidth,
            "spot_kernel": self.spot_kernel,
            "spot_leave_out": self.spot_leave_out,
            "spot_floor": self.spot_floor,
            "newton": self.newton,
        }


def load_mc_config(path: Union[str, Path], **overrides: Any) -> McConfig:
    """Read an McConfig JSON file, applying non-None keyword overrides."""
    data = read_json(path)
    if not isinstance(data, dict):
        raise ConfigurationError(f"{path}: expected a JSON object")
    data.update({key: value for key, value in overrides.items() if value is not None})
    return McConfig.from_dict(data)

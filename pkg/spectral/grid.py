"""Block partition of the unit interval used by the spectral statistics."""

from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray

from model.errors import ConfigurationError


@dataclass(frozen=True)
class BlockGrid:
    """
    Partition of [0, 1] into ``blocks`` blocks of length h = 1/blocks over n samples.

    Block k covers (kh, (k+1)h] and holds the m = n·h observations
    i = k·m + 1, ..., (k+1)·m.
    """

    n: int
    blocks: int

    def __post_init__(self) -> None:
        """Validate divisibility and block size."""
        if self.blocks < 1:
            raise ConfigurationError(f"block count must be positive, got {self.blocks}")
        if self.n < 1:
            raise ConfigurationError(f"sample count must be positive, got {self.n}")
        if self.n % self.blocks != 0:
            raise ConfigurationError(
                f"n={self.n} is not a multiple of the block count {self.blocks}, "
                "n·h must be an integer"
            )
        if self.n // self.blocks < 2:
            raise ConfigurationError(
                f"each block needs at least two samples, got n·h={self.n // self.blocks}"
            )

    @classmethod
    def from_block_length(cls, n: int, h: float) -> "BlockGrid":
        """Build a grid from the block length h, requiring 1/h to be an integer."""
        if not 0.0 < h <= 1.0:
            raise ConfigurationError(f"block length must lie in (0, 1], got {h}")
        blocks = round(1.0 / h)
        if abs(blocks * h - 1.0) > 1e-12:
            raise ConfigurationError(f"1/h must be an integer, got h={h}")
        return cls(n=n, blocks=blocks)

    @property
    def h(self) -> float:
        return 1.0 / self.blocks

    @property
    def block_size(self) -> int:
        """Samples per block, m = n·h."""
        return self.n // self.blocks

    @property
    def starts(self) -> NDArray[np.float64]:
        return np.arange(self.blocks) / self.blocks

    @property
    def centers(self) -> NDArray[np.float64]:
        """Block midpoints (k + 1/2)h."""
        return (np.arange(self.blocks) + 0.5) / self.blocks

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "blocks": self.blocks, "h": self.h, "block_size": self.block_size}

"""Simple in-memory caching for in-block spectral weight matrices."""

import logging
import threading
from collections import OrderedDict
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from model.errors import ConfigurationError
from settings import get_settings

logger = logging.getLogger(__name__)

# Grids kept before the least recently used one is dropped
DEFAULT_MAX_GRIDS = 16


class WeightCache:
    """
    In-memory LRU cache of J×m weight matrices keyed by grid shape (n, blocks).

    Only the matrix with the most frequencies is kept per grid; smaller cut-offs are served
    as row slices of it. Stored arrays are read-only. At most ``max_grids`` grids are held.
    """

    def __init__(self, enabled: Optional[bool] = None, max_grids: int = DEFAULT_MAX_GRIDS) -> None:
        """Initialize the cache."""
        if max_grids < 1:
            raise ConfigurationError(f"max_grids must be at least 1, got {max_grids}")
        self._cache: OrderedDict[tuple[int, int], NDArray[np.float64]] = OrderedDict()
        self._lock = threading.Lock()
        self._enabled = get_settings().enable_weight_cache if enabled is None else enabled
        self._max_grids = max_grids

    @property
    def enabled(self) -> bool:
        return self._enabled

    @property
    def max_grids(self) -> int:
        return self._max_grids

    def get(self, n: int, blocks: int, j_max: int) -> Optional[NDArray[np.float64]]:
        """
        Get cached weights for a grid.

        Args:
            n: Sample count of the grid
            blocks: Block count of the grid
            j_max: Number of frequencies required

        Returns:
            Read-only j_max×m matrix or None if not cached
        """
        if not self._enabled:
            return None
        with self._lock:
            matrix = self._cache.get((n, blocks))
            if matrix is None or matrix.shape[0] < j_max:
                return None
            self._cache.move_to_end((n, blocks))
        return matrix[:j_max]

    def set(self, n: int, blocks: int, matrix: NDArray[np.float64]) -> None:
        """
        Cache a weight matrix, keeping whichever of old and new has more rows.

        Args:
            n: Sample count of the grid
            blocks: Block count of the grid
            matrix: J×m weight matrix
        """
        if not self._enabled:
            return
        frozen = np.array(matrix, dtype=float)
        frozen.setflags(write=False)
        key = (n, blocks)
        with self._lock:
            current = self._cache.get(key)
            if current is None or current.shape[0] < frozen.shape[0]:
                self._cache[key] = frozen
                logger.debug(
                    "Cached %d weight rows for grid n=%d, blocks=%d", frozen.shape[0], n, blocks
                )
            self._cache.move_to_end(key)
            while len(self._cache) > self._max_grids:
                evicted, _ = self._cache.popitem(last=False)
                logger.debug("Evicted weights for grid n=%d, blocks=%d", *evicted)

    def clear(self) -> None:
        """Clear all cached weights."""
        with self._lock:
            self._cache.clear()

    def __contains__(self, key: object) -> bool:
        return key in self._cache

    def __len__(self) -> int:
        return len(self._cache)


# Global cache instance
_weight_cache: Optional[WeightCache] = None


def get_weight_cache() -> WeightCache:
    """
    Get the global weight cache instance.

    Returns:
        WeightCache instance
    """
    global _weight_cache
    if _weight_cache is None:
        _weight_cache = WeightCache()
    return _weight_cache

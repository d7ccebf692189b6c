"""Finite-dimensional Gaussian laws with a validated Cholesky factor."""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import LinAlgError, block_diag, cholesky, solve_triangular

from model.errors import ConfigurationError, DomainError

MAX_DIMENSION = 512
SYMMETRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class GaussianLaw:
    """
    Normal law N(mean, cov) on R^d, d <= 512.

    The covariance must be symmetric within 1e-12 (relative to its largest entry) and
    positive definite; the lower Cholesky factor is kept for whitening.
    """

    mean: NDArray[np.float64]
    cov: NDArray[np.float64]
    chol: NDArray[np.float64] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        """Validate dimensions, symmetry and positive definiteness."""
        cov = np.array(self.cov, dtype=float)
        mean = np.array(self.mean, dtype=float).reshape(-1)
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
            raise ConfigurationError(f"covariance must be square, got shape {cov.shape}")
        d = cov.shape[0]
        if d == 0 or d > MAX_DIMENSION:
            raise ConfigurationError(f"dimension must lie in 1..{MAX_DIMENSION}, got {d}")
        if mean.shape != (d,):
            raise ConfigurationError(f"mean has {mean.size} entries, covariance is {d}×{d}")
        if not (np.all(np.isfinite(cov)) and np.all(np.isfinite(mean))):
            raise DomainError("mean and covariance must be finite")
        scale = max(1.0, float(np.max(np.abs(cov))))
        if np.max(np.abs(cov - cov.T)) > SYMMETRY_TOL * scale:
            raise DomainError("covariance is not symmetric")
        try:
            chol = cholesky(cov, lower=True)
        except LinAlgError as e:
            raise DomainError("covariance is not positive definite") from e
        for name, value in (("mean", mean), ("cov", cov), ("chol", chol)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @classmethod
    def centered(cls, cov: ArrayLike) -> "GaussianLaw":
        matrix = np.asarray(cov, dtype=float)
        return cls(mean=np.zeros(matrix.shape[0]), cov=matrix)

    @property
    def dim(self) -> int:
        return int(self.cov.shape[0])

    def logdet(self) -> float:
        """log det Σ from the Cholesky diagonal."""
        return float(2.0 * np.sum(np.log(np.diag(self.chol))))

    def whiten(self, values: ArrayLike) -> NDArray[np.float64]:
        """Apply L⁻¹ where Σ = LLᵀ (vector or matrix columns)."""
        return np.asarray(
            solve_triangular(self.chol, np.asarray(values, dtype=float), lower=True), dtype=float
        )

    def relative_perturbation(self, other_cov: ArrayLike) -> NDArray[np.float64]:
        """L⁻¹(Σ' - Σ)L⁻ᵀ, orthogonally similar to Σ^{-1/2}(Σ' - Σ)Σ^{-1/2}."""
        delta = np.asarray(other_cov, dtype=float) - self.cov
        left = self.whiten(delta)
        return self.whiten(left.T).T


def product_law(laws: Sequence[GaussianLaw], mean: Optional[ArrayLike] = None) -> GaussianLaw:
    """
    Product of independent Gaussian laws as one block-diagonal law.

    Args:
        laws: Factors in order
        mean: Optional override of the stacked mean

    Returns:
        GaussianLaw of dimension Σ dim_i
    """
    if not laws:
        raise ConfigurationError("product law needs at least one factor")
    stacked = np.concatenate([law.mean for law in laws]) if mean is None else mean
    return GaussianLaw(mean=np.asarray(stacked), cov=block_diag(*[law.cov for law in laws]))

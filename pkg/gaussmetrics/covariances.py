"""Covariance constructions of the regression experiments and the white-noise eigenvalue bound."""

import logging
import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import quad

from gaussmetrics.hellinger import hellinger_squared
from gaussmetrics.laws import MAX_DIMENSION, GaussianLaw
from model.errors import ConfigurationError, DomainError
from model.schemas import POSITIVITY_GRID, VolatilityCurve

logger = logging.getLogger(__name__)

QUAD_RTOL = 1e-13
DEFAULT_EIGEN_TRUNCATION = 100_000


def _integrated_variance(curve: VolatilityCurve, lo: float, hi: float) -> float:
    value, _ = quad(
        lambda t: float(curve.variance_antiderivative(t)),
        lo,
        hi,
        epsabs=0.0,
        epsrel=QUAD_RTOL,
    )
    return float(value)


def regression_covariances(
    curve: VolatilityCurve, n: int, delta: float
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Covariances of the two discretized regression vectors.

    Σ^Y_kl = a((k∧l)/n) + δ²1(k=l) and Σ^Ỹ_kl = b_{k∧l} + δ²1(k=l), where
    a(t) = ∫₀ᵗσ², b_k = n∫ a over [(2k-1)/2n, (2k+1)/2n] and the last interval is reflected
    at t = 1, so b_n = 2n∫ a over [(2n-1)/2n, 1].

    Args:
        curve: Volatility curve
        n: Dimension, at most 512
        delta: Noise standard deviation

    Returns:
        Tuple (Σ^Y, Σ^Ỹ)
    """
    if not 1 <= n <= MAX_DIMENSION:
        raise ConfigurationError(f"dimension must lie in 1..{MAX_DIMENSION}, got {n}")
    if delta < 0.0:
        raise DomainError(f"noise level must be nonnegative, got {delta}")

    k = np.arange(1, n + 1)
    a = curve.variance_antiderivative(k / n)
    b = np.empty(n)
    for i in range(1, n):
        b[i - 1] = n * _integrated_variance(curve, (2 * i - 1) / (2 * n), (2 * i + 1) / (2 * n))
    b[n - 1] = 2 * n * _integrated_variance(curve, (2 * n - 1) / (2 * n), 1.0)

    index = np.minimum.outer(k, k) - 1
    noise = delta**2 * np.eye(n)
    return a[index] + noise, b[index] + noise


@dataclass(frozen=True)
class DecayReport:
    """Squared Hellinger distances of the regression pair over increasing n."""

    sizes: tuple[int, ...]
    h2: tuple[float, ...]
    slope: float

    @property
    def decreasing(self) -> bool:
        return all(later < earlier for earlier, later in zip(self.h2, self.h2[1:]))

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "sizes": list(self.sizes),
            "h2": list(self.h2),
            "loglog_slope": self.slope,
            "strictly_decreasing": self.decreasing,
        }


def regression_decay(
    curve: VolatilityCurve, delta: float, sizes: Sequence[int] = (8, 16, 32, 64)
) -> DecayReport:
    """
    H²(N(0,Σ^Y), N(0,Σ^Ỹ)) for each n with the least-squares log-log slope.

    Args:
        curve: Smooth volatility curve
        delta: Noise standard deviation
        sizes: Dimensions to evaluate, at least two

    Returns:
        DecayReport
    """
    if len(sizes) < 2:
        raise ConfigurationError("decay check needs at least two sizes")
    values = []
    for n in sizes:
        cov_y, cov_tilde = regression_covariances(curve, int(n), delta)
        law_y, law_tilde = GaussianLaw.centered(cov_y), GaussianLaw.centered(cov_tilde)
        values.append(hellinger_squared(law_y, law_tilde))
        logger.debug("n=%d: H²=%g", n, values[-1])
    if min(values) <= 0.0:
        raise DomainError("Hellinger distances vanish, the log-log slope is undefined")
    slope, _ = np.polyfit(np.log(np.asarray(sizes, dtype=float)), np.log(values), 1)
    return DecayReport(sizes=tuple(int(n) for n in sizes), h2=tuple(values), slope=float(slope))


def eigenvalues(min_sigma2: float, eps: float, K: int) -> NDArray[np.float64]:
    """λ_k = 4/(4σ̲² + (2k-1)²π²ε²) for k = 1..K."""
    if K < 1:
        raise DomainError(f"truncation K must be at least 1, got {K}")
    if not eps > 0.0 or not min_sigma2 > 0.0:
        raise DomainError("noise level and minimal variance must be positive")
    odd = 2.0 * np.arange(1, K + 1, dtype=float) - 1.0
    return np.asarray(4.0 / (4.0 * min_sigma2 + odd**2 * math.pi**2 * eps**2), dtype=float)


def eigenvalue_l2_norm(min_sigma2: float, eps: float, K: int = DEFAULT_EIGEN_TRUNCATION) -> float:
    """
    ℓ²-norm of (λ_k), the first K terms summed exactly and the rest bounded by
    16/(π⁴ε⁴)·1/(6(2K-1)³).
    """
    squares = eigenvalues(min_sigma2, eps, K) ** 2
    tail = 16.0 / (math.pi**4 * eps**4) / (6.0 * (2.0 * K - 1.0) ** 3)
    return math.sqrt(math.fsum(squares[::-1].tolist()) + tail)


def white_noise_bound(
    curve1: VolatilityCurve,
    curve2: VolatilityCurve,
    eps: float,
    K: int = DEFAULT_EIGEN_TRUNCATION,
) -> float:
    """
    Eigenvalue bound sup|σ₁² - σ₂²|·‖(λ_k)‖_ℓ² between two white-noise experiments.

    The sup norm and min σ₁² come from a 10⁴-point grid scan, so the sup is a lower estimate of
    the true supremum. The squared Hellinger distance is at most twice the square of the result.

    Args:
        curve1: Reference curve (fixes the eigenvalues)
        curve2: Perturbed curve
        eps: Noise level ε > 0
        K: Eigenvalue truncation

    Returns:
        The bound
    """
    if K < 1 or not eps > 0.0:
        raise DomainError("white-noise bound needs K >= 1 and eps > 0")
    grid = np.linspace(0.0, 1.0, POSITIVITY_GRID + 1)
    s1 = curve1.sigma2(grid)
    sup_norm = float(np.max(np.abs(s1 - curve2.sigma2(grid))))
    if sup_norm == 0.0:
        return 0.0
    return sup_norm * eigenvalue_l2_norm(float(np.min(s1)), eps, K)

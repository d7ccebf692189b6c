"""Fisher information of one block about its variance, in closed form and as truncated series."""

import math
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
from numpy.typing import NDArray
from scipy.special import zeta

from model.errors import DomainError

# Below this argument the bracket is evaluated from its zeta-function power series
SERIES_THRESHOLD = 1.0
_SERIES_TERMS = 40


def _check_positive(**values: float) -> None:
    for name, value in values.items():
        if not (value > 0.0 and math.isfinite(value)):
            raise DomainError(f"{name} must be finite and positive, got {value}")


def _identity_series(lam: float) -> float:
    # Σ_j λ³/(λ²+π²j²)² = Σ_m (-1)^m (m+1) λ^{3+2m} ζ(4+2m) / π^{4+2m}, valid for λ < π
    m = np.arange(_SERIES_TERMS, dtype=float)
    ratio = lam / math.pi
    terms = (-1.0) ** m * (m + 1.0) * ratio ** (4.0 + 2.0 * m) * zeta(4.0 + 2.0 * m) / lam
    return math.fsum(terms[::-1].tolist())


def identity_rhs(lam: float) -> float:
    """
    Closed form of Σ_{j≥1} λ³/(λ²+π²j²)².

    Equals (1 + 4λe^{-2λ} - e^{-4λ})/(4(1 - e^{-2λ})²) - 1/(2λ); small λ uses the power series
    since the closed form cancels catastrophically there.
    """
    _check_positive(lam=lam)
    if lam < SERIES_THRESHOLD:
        return _identity_series(lam)
    e2 = math.exp(-2.0 * lam)
    denominator = math.expm1(-2.0 * lam) ** 2
    return (1.0 + 4.0 * lam * e2 - e2 * e2) / (4.0 * denominator) - 1.0 / (2.0 * lam)


def _descending_sum(terms: NDArray[np.float64]) -> float:
    return math.fsum(terms[::-1].tolist())


def fisher_closed(theta: float, h0: float) -> float:
    """
    Closed-form Fisher information I(θ) = Σ_{j≥1} 1/(2(θ + h₀⁻²π²j²)²).

    Args:
        theta: Variance parameter θ > 0
        h0: Spectral scale h₀ > 0

    Returns:
        I(θ) = h₀/(8θ^{3/2})·[(1+4xe^{-2x}-e^{-4x})/(1-e^{-2x})² - 2/x], x = θ^{1/2}h₀
    """
    _check_positive(theta=theta, h0=h0)
    x = math.sqrt(theta) * h0
    return h0 * 4.0 * identity_rhs(x) / (8.0 * theta**1.5)


def fisher_partial(theta: float, h0: float, J: int) -> float:
    """Truncated information Σ_{j=1..J} 1/(2(θ + h₀⁻²π²j²)²), summed from the smallest term."""
    _check_positive(theta=theta, h0=h0)
    if J < 1:
        raise DomainError(f"truncation J must be at least 1, got {J}")
    j = np.arange(1, J + 1, dtype=float)
    terms = 0.5 / (theta + math.pi**2 * j**2 / h0**2) ** 2
    return _descending_sum(terms)


def fisher_tail_bound(h0: float, J: int) -> float:
    """Bound (h₀⁴/(2π⁴))/(3(J - 1/2)³) on the information beyond frequency J."""
    _check_positive(h0=h0)
    if J < 1:
        raise DomainError(f"truncation J must be at least 1, got {J}")
    return h0**4 / (2.0 * math.pi**4) / (3.0 * (J - 0.5) ** 3)


@dataclass(frozen=True)
class SeriesIdentity:
    """Both sides of the series identity at one λ."""

    lam: float
    J: int
    lhs: float
    tail_bound: float
    rhs: float

    @property
    def lhs_with_tail(self) -> float:
        return self.lhs + self.tail_bound

    @property
    def abs_diff(self) -> float:
        return abs(self.lhs_with_tail - self.rhs)

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "lambda": self.lam,
            "J": self.J,
            "lhs": self.lhs,
            "tail_bound": self.tail_bound,
            "lhs_with_tail": self.lhs_with_tail,
            "rhs": self.rhs,
            "abs_diff": self.abs_diff,
        }


def series_identity(lam: float, J: int) -> SeriesIdentity:
    """
    Compare the truncated sum Σ_{j≤J} λ³/(λ²+π²j²)² with its closed form.

    Args:
        lam: λ > 0
        J: Truncation

    Returns:
        SeriesIdentity holding lhs, the tail bound λ³/(3π⁴(J-1/2)³) and rhs
    """
    _check_positive(lam=lam)
    if J < 1:
        raise DomainError(f"truncation J must be at least 1, got {J}")
    j = np.arange(1, J + 1, dtype=float)
    terms = lam**3 / (lam**2 + math.pi**2 * j**2) ** 2
    return SeriesIdentity(
        lam=lam,
        J=J,
        lhs=_descending_sum(terms),
        tail_bound=lam**3 / (3.0 * math.pi**4 * (J - 0.5) ** 3),
        rhs=identity_rhs(lam),
    )


@dataclass(frozen=True)
class FisherReport:
    """Fisher information of one block, closed form and optionally truncated."""

    theta: float
    h0: float
    value_closed: float
    J: Optional[int] = None
    value_partial: Optional[float] = None
    tail_bound: Optional[float] = None

    @property
    def lan_normalized(self) -> float:
        """I(θ)/h₀, the information per unit of spectral scale."""
        return self.value_closed / self.h0

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        result: dict[str, Any] = {
            "theta": self.theta,
            "h0": self.h0,
            "J": self.J,
            "value_closed": self.value_closed,
            "value_partial": self.value_partial,
            "lan_normalized": self.lan_normalized,
        }
        if self.value_partial is not None:
            result["partial_lan_normalized"] = self.value_partial / self.h0
            result["tail_bound"] = self.tail_bound
            result["relative_gap"] = (self.value_closed - self.value_partial) / self.value_closed
        return result


def fisher_report(theta: float, h0: float, J: Optional[int] = None) -> FisherReport:
    """
    Evaluate the information at (θ, h₀), adding the truncated sum when J is given.

    Args:
        theta: Variance parameter
        h0: Spectral scale
        J: Optional truncation

    Returns:
        FisherReport
    """
    closed = fisher_closed(theta, h0)
    if J is None:
        return FisherReport(theta=theta, h0=h0, value_closed=closed)
    return FisherReport(
        theta=theta,
        h0=h0,
        value_closed=closed,
        J=J,
        value_partial=fisher_partial(theta, h0, J),
        tail_bound=fisher_tail_bound(h0, J),
    )

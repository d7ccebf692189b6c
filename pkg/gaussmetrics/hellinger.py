"""Hellinger distances between Gaussian laws and their Hilbert–Schmidt upper bounds."""

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from gaussmetrics.laws import GaussianLaw
from model.errors import ConfigurationError


def _check_pair(p: GaussianLaw, q: GaussianLaw) -> None:
    if p.dim != q.dim:
        raise ConfigurationError(f"dimension mismatch: {p.dim} vs {q.dim}")


def hellinger_squared(p: GaussianLaw, q: GaussianLaw) -> float:
    """
    Squared Hellinger distance H² = 2 - 2·BC with the Bhattacharyya coefficient

    BC = det(Σ₁)^{1/4} det(Σ₂)^{1/4} det(Σ̄)^{-1/2} exp(-⅛ Δᵀ Σ̄⁻¹ Δ), Σ̄ = (Σ₁ + Σ₂)/2,

    evaluated through Cholesky log-determinants.

    Args:
        p: First law
        q: Second law

    Returns:
        H² in [0, 2]
    """
    _check_pair(p, q)
    average = GaussianLaw(mean=np.zeros(p.dim), cov=0.5 * (p.cov + q.cov))
    shift = average.whiten(p.mean - q.mean)
    log_bc = (
        0.25 * p.logdet()
        + 0.25 * q.logdet()
        - 0.5 * average.logdet()
        - 0.125 * float(np.dot(shift, shift))
    )
    return min(max(-2.0 * math.expm1(min(log_bc, 0.0)), 0.0), 2.0)


def hellinger_exact(p: GaussianLaw, q: GaussianLaw) -> float:
    """Hellinger distance H ∈ [0, √2]."""
    return math.sqrt(hellinger_squared(p, q))


@dataclass(frozen=True)
class HellingerBound:
    """
    Upper bounds on H² built from the whitened mean shift and covariance perturbation.

    ``mean_term`` is ‖Σ₁^{-1/2}(μ₁-μ₂)‖², ``hs_term`` is ‖Σ₁^{-1/2}(Σ₂-Σ₁)Σ₁^{-1/2}‖²_HS.
    """

    mean_term: float
    hs_term: float

    @property
    def mean_bound(self) -> float:
        """Bound for equal covariances, ¼‖Σ^{-1/2}Δμ‖²."""
        return 0.25 * self.mean_term

    @property
    def covariance_bound(self) -> float:
        """Bound for equal means, 2‖Σ₁^{-1/2}(Σ₂-Σ₁)Σ₁^{-1/2}‖²_HS."""
        return 2.0 * self.hs_term

    @property
    def total(self) -> float:
        """Triangle-inequality combination 2·(mean_bound + covariance_bound)."""
        return 0.5 * self.mean_term + 4.0 * self.hs_term

    @property
    def printed_total(self) -> float:
        """4‖·‖² + ½‖·‖²_HS, the combination with swapped coefficients (not a valid bound)."""
        return 4.0 * self.mean_term + 0.5 * self.hs_term

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "mean_term": self.mean_term,
            "hs_term": self.hs_term,
            "mean_bound": self.mean_bound,
            "covariance_bound": self.covariance_bound,
            "total": self.total,
            "printed_total": self.printed_total,
        }


def hellinger_bound(p: GaussianLaw, q: GaussianLaw) -> HellingerBound:
    """
    Hilbert–Schmidt upper bounds on H²(p, q), whitened by the covariance of ``p``.

    Args:
        p: Reference law N(μ₁, Σ₁)
        q: Perturbed law N(μ₂, Σ₂)

    Returns:
        HellingerBound; ``total`` bounds H² for arbitrary mean and covariance changes
    """
    _check_pair(p, q)
    shift = p.whiten(p.mean - q.mean)
    perturbation = p.relative_perturbation(q.cov)
    return HellingerBound(
        mean_term=float(np.dot(shift, shift)),
        hs_term=float(np.sum(perturbation**2)),
    )

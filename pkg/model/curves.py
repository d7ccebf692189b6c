"""Operations on volatility curves: evaluation, cell variances and moments."""

import math

import numpy as np
from numpy.polynomial import Polynomial
from numpy.typing import NDArray
from scipy.integrate import quad

from model.errors import ConfigurationError, DomainError
from model.schemas import POSITIVITY_GRID, CurveKind, VolatilityCurve

# Relative tolerance of every adaptive quadrature in this module
QUAD_RTOL = 1e-12


def eval_sigma2(curve: VolatilityCurve, t: float) -> float:
    """
    Evaluate the spot variance σ²(t).

    Args:
        curve: Volatility curve
        t: Time in [0, 1]

    Returns:
        σ²(t)
    """
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"time must lie in [0, 1], got {t}")
    return float(curve.sigma2(t))


def integrated_variance_at(curve: VolatilityCurve, t: float) -> float:
    """Return a(t) = ∫₀ᵗ σ²(s) ds."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"time must lie in [0, 1], got {t}")
    return float(curve.variance_antiderivative(t))


def cell_variance(curve: VolatilityCurve, i: int, n: int) -> float:
    """
    Variance mass ∫σ² over the i-th cell ((i-1)/n, i/n].

    Args:
        curve: Volatility curve
        i: Cell index, 1 <= i <= n
        n: Grid size

    Returns:
        The integrated variance of the cell
    """
    if n < 1 or not 1 <= i <= n:
        raise DomainError(f"cell index must satisfy 1 <= i <= n, got i={i}, n={n}")
    bounds = curve.variance_antiderivative(np.array([(i - 1) / n, i / n]))
    return float(bounds[1] - bounds[0])


def cell_variances(curve: VolatilityCurve, n: int) -> NDArray[np.float64]:
    """Vector of all n cell variances of the grid i/n."""
    if n < 1:
        raise DomainError(f"grid size must be positive, got {n}")
    antiderivative = curve.variance_antiderivative(np.arange(n + 1) / n)
    return np.asarray(np.diff(antiderivative), dtype=float)


def sigma_moment(curve: VolatilityCurve, p: float) -> float:
    """
    Compute ∫₀¹ σ(t)^p dt.

    Polynomial and constant curves integrate exactly for integer p; p = 2 always uses the
    closed-form variance antiderivative; the remaining cases use adaptive quadrature.
    """
    if curve.kind is CurveKind.CONSTANT:
        return float(curve.params[0] ** p)
    if p == 2:
        return float(curve.variance_antiderivative(1.0) - curve.variance_antiderivative(0.0))
    if curve.kind is CurveKind.SHIFTED_QUARTIC and float(p).is_integer() and p >= 0:
        a, b, c = curve.params
        antiderivative = (Polynomial([a, 0.0, 0.0, 0.0, b]) ** int(p)).integ()
        return float(antiderivative(1.0 - c) - antiderivative(-c))
    if curve.kind is CurveKind.TABULATED:
        return _tabulated_moment(curve, p)
    if curve.kind is CurveKind.COSINE_PERTURBATION:
        # Integer frequency: every unit interval of π·n_freq·t carries the same mass
        n_freq, alpha = curve.params
        amplitude = n_freq ** (-alpha)
        value, _ = quad(
            lambda s: (1.0 + amplitude * math.cos(math.pi * s)) ** (p / 2.0),
            0.0,
            1.0,
            epsabs=0.0,
            epsrel=QUAD_RTOL,
        )
        return float(value)
    a, b, f = curve.params
    if float(f).is_integer():
        value, _ = quad(
            lambda s: (a + b * math.sin(2.0 * math.pi * s)) ** p,
            0.0,
            1.0,
            epsabs=0.0,
            epsrel=QUAD_RTOL,
            limit=200,
        )
    else:
        value, _ = quad(
            lambda s: float(curve.sigma(s)) ** p,
            0.0,
            1.0,
            epsabs=0.0,
            epsrel=QUAD_RTOL,
            limit=max(200, int(50 * f)),
        )
    return float(value)


def _tabulated_moment(curve: VolatilityCurve, p: float) -> float:
    # σ linear on [t0, t1]: ∫σ^p = L (s1^{p+1} - s0^{p+1}) / ((p+1)(s1 - s0))
    knots = np.asarray(curve.knots)
    sig = np.asarray(curve.sigmas)
    lengths = np.diff(knots)
    s0, s1 = sig[:-1], sig[1:]
    flat = np.abs(s1 - s0) <= 1e-9 * np.maximum(np.abs(s0), np.abs(s1))
    safe = np.where(flat, 1.0, s1 - s0)
    sloped = lengths * (s1 ** (p + 1) - s0 ** (p + 1)) / ((p + 1) * safe)
    level = lengths * (0.5 * (s0 + s1)) ** p
    return math.fsum(np.where(flat, level, sloped).tolist())


def sigma_max(curve: VolatilityCurve) -> float:
    """Grid maximum of σ over [0, 1] (a lower bound on the true supremum)."""
    grid = np.linspace(0.0, 1.0, POSITIVITY_GRID + 1)
    return float(np.max(curve.sigma(grid)))


def counterexample_curve(n_freq: int, alpha: float) -> VolatilityCurve:
    """
    Perturbed curve σ²(t) = 1 + n^-α cos(π n t) whose grid increments match σ ≡ 1.

    Args:
        n_freq: Oscillation frequency, equal to the grid size it is invisible on
        alpha: Hölder exponent in (0, 1)

    Returns:
        The cosine-perturbation curve
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"Hölder exponent must lie in (0, 1), got {alpha}")
    if n_freq < 1:
        raise DomainError(f"frequency must be a positive integer, got {n_freq}")
    if not float(n_freq).is_integer():
        raise ConfigurationError(f"frequency must be an integer, got {n_freq}")
    return VolatilityCurve.cosine_perturbation(int(n_freq), alpha)


def counterexample_signal(n_freq: int, alpha: float) -> dict[str, float]:
    """
    Signal strength of the perturbed curve in the Gaussian shift model.

    The noise level is δ_n = n^{1/2 - 2α}; the shift experiment observes √(2σ(t)) with
    diffusion coefficient δ_n^{1/2} n^{-1/4}, so the squared signal distance divided by
    δ_n n^{-1/2} stays of order one.
    """
    curve = counterexample_curve(n_freq, alpha)
    amplitude = n_freq ** (-alpha)
    distance, _ = quad(
        lambda s: 2.0 * ((1.0 + amplitude * math.cos(math.pi * s)) ** 0.25 - 1.0) ** 2,
        0.0,
        1.0,
        epsabs=0.0,
        epsrel=QUAD_RTOL,
    )
    noise_level = n_freq ** (0.5 - 2.0 * alpha)
    return {
        "n": float(n_freq),
        "alpha": float(curve.params[1]),
        "noise_level": float(noise_level),
        "signal_distance": float(distance),
        "signal_to_noise": float(distance / (noise_level * n_freq ** (-0.5))),
    }

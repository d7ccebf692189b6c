"""Pass/fail verification tables for the Gaussian-experiment inequalities."""

import logging
import math
from typing import Any, Sequence

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import quad
from scipy.stats import norm

from gaussmetrics.covariances import eigenvalue_l2_norm, regression_decay, white_noise_bound
from gaussmetrics.hellinger import hellinger_bound, hellinger_squared
from gaussmetrics.laws import GaussianLaw, product_law
from model.curves import cell_variances, counterexample_curve, counterexample_signal
from model.schemas import POSITIVITY_GRID, VolatilityCurve

logger = logging.getLogger(__name__)

BOUND_SLACK = 1e-12


def random_spd(rng: np.random.Generator, d: int) -> NDArray[np.float64]:
    """Random well-conditioned SPD matrix AAᵀ/d + I/10."""
    a = rng.standard_normal((d, d))
    return np.asarray(a @ a.T / d + 0.1 * np.eye(d), dtype=float)


def random_law(rng: np.random.Generator, d: int, mean_scale: float = 0.5) -> GaussianLaw:
    return GaussianLaw(mean=mean_scale * rng.standard_normal(d), cov=random_spd(rng, d))


def density_hellinger_squared(m1: float, v1: float, m2: float, v2: float) -> float:
    """H² = ∫(√p - √q)² of two 1-D normal densities by adaptive quadrature."""
    s1, s2 = math.sqrt(v1), math.sqrt(v2)
    value, _ = quad(
        lambda x: (math.sqrt(norm.pdf(x, m1, s1)) - math.sqrt(norm.pdf(x, m2, s2))) ** 2,
        -math.inf,
        math.inf,
        epsabs=1e-13,
        epsrel=1e-12,
        limit=200,
    )
    return float(value)


def _check(name: str, passed: bool, **detail: Any) -> dict[str, Any]:
    return {"check": name, "passed": bool(passed), **detail}


def hellinger_suite(
    pairs: int = 200, max_dim: int = 6, products: int = 50, seed: int = 0
) -> dict[str, Any]:
    """
    Verify the Hellinger toolbox numerically.

    Checks: exact ≤ bound on random SPD pairs; scalar scale and mean-shift closed forms
    against density quadrature; product subadditivity; the 1-D scale bound 2(σ²-1)².

    Args:
        pairs: Number of random pairs
        max_dim: Largest dimension of the random pairs
        products: Number of random product instances
        seed: Seed of the instance generator

    Returns:
        Table with one row per check and an overall ``passed`` flag
    """
    rng = np.random.default_rng(seed)
    checks = []

    worst = 0.0
    failures = 0
    for _ in range(pairs):
        d = int(rng.integers(1, max_dim + 1))
        p, q = random_law(rng, d), random_law(rng, d)
        exact = hellinger_squared(p, q)
        bound = hellinger_bound(p, q).total
        worst = max(worst, exact / bound if bound > 0.0 else 0.0)
        failures += exact > bound + BOUND_SLACK
    checks.append(_check("exact_below_bound", failures == 0, pairs=pairs, max_ratio=worst))

    scalar_cases = [(0.0, 1.0, 0.0, 2.0), (0.0, 1.0, 2.0, 1.0), (0.3, 0.5, -0.4, 1.7)]
    max_error = 0.0
    for m1, v1, m2, v2 in scalar_cases:
        exact = hellinger_squared(
            GaussianLaw(np.array([m1]), np.array([[v1]])),
            GaussianLaw(np.array([m2]), np.array([[v2]])),
        )
        max_error = max(max_error, abs(exact - density_hellinger_squared(m1, v1, m2, v2)))
    checks.append(_check("scalar_vs_quadrature", max_error <= 1e-6, max_abs_error=max_error))

    violations = 0
    for _ in range(products):
        factors = int(rng.integers(2, 4))
        left = [random_law(rng, int(rng.integers(1, 4))) for _ in range(factors)]
        right = [random_law(rng, law.dim) for law in left]
        joint = hellinger_squared(product_law(left), product_law(right))
        parts = math.fsum(hellinger_squared(a, b) for a, b in zip(left, right))
        violations += joint > parts + BOUND_SLACK
    checks.append(_check("product_subadditivity", violations == 0, instances=products))

    scale_ok = True
    for s2 in np.linspace(0.5, 2.0, 31):
        h2 = hellinger_squared(GaussianLaw.centered([[1.0]]), GaussianLaw.centered([[s2]]))
        scale_ok &= h2 <= 2.0 * (s2 - 1.0) ** 2 + BOUND_SLACK
    checks.append(_check("scalar_scale_bound", scale_ok))

    return {"checks": checks, "passed": all(c["passed"] for c in checks)}


def regression_bound_report(
    curve: VolatilityCurve,
    delta: float = 1.0,
    sizes: Sequence[int] = (8, 16, 32, 64),
    slope_range: tuple[float, float] = (-2.7, -1.4),
) -> dict[str, Any]:
    """Decay of the regression-pair distance with pass/fail on monotonicity and slope."""
    decay = regression_decay(curve, delta, sizes)
    in_range = slope_range[0] <= decay.slope <= slope_range[1]
    return {
        **decay.to_dict(),
        "slope_range": list(slope_range),
        "passed": decay.decreasing and in_range,
    }


def white_noise_report(
    curve1: VolatilityCurve, curve2: VolatilityCurve, eps_values: Sequence[float]
) -> dict[str, Any]:
    """White-noise bound per ε together with the eigenvalue norms."""
    grid = np.linspace(0.0, 1.0, POSITIVITY_GRID + 1)
    min_s1 = float(np.min(curve1.sigma2(grid)))
    rows = [
        {
            "eps": eps,
            "eigen_l2_norm": eigenvalue_l2_norm(min_s1, eps),
            "bound": white_noise_bound(curve1, curve2, eps),
        }
        for eps in eps_values
    ]
    return {"rows": rows}


def counterexample_report(sizes: Sequence[int] = (10, 100), alpha: float = 0.5) -> dict[str, Any]:
    """
    Check that the perturbed curve's cell variances equal 1/n on the matched grid.

    Returns:
        One row per n with the maximal deviation and the Gaussian-shift signal strength
    """
    rows = []
    for n in sizes:
        cells = cell_variances(counterexample_curve(n, alpha), n)
        deviation = float(np.max(np.abs(cells - 1.0 / n)))
        rows.append(
            {
                **counterexample_signal(n, alpha),
                "max_cell_deviation": deviation,
                "passed": deviation <= 1e-12,
            }
        )
    return {"alpha": alpha, "rows": rows, "passed": all(row["passed"] for row in rows)}

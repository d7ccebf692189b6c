"""Per-block maximum-likelihood refinement of the spot variance."""

import logging
import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from estimators.config import EstimatorConfig
from estimators.weights import frequency_offsets
from model.errors import DomainError

logger = logging.getLogger(__name__)

DAMPING = 0.5
MAX_ITERATIONS = 100
TOLERANCE = 1e-10
LOWER_BOUND = 1e-12
UPPER_BOUND = 1e6


@dataclass(frozen=True)
class MleResult:
    """Outcome of one block refinement."""

    value: float
    rhs: float
    converged: bool
    iterations: int
    residual: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "rhs": self.rhs,
            "converged": self.converged,
            "iterations": self.iterations,
            "residual": self.residual,
        }


def _weights_and_rhs(
    s: float, responses: NDArray[np.float64], offsets: NDArray[np.float64]
) -> tuple[NDArray[np.float64], float]:
    raw = (s + offsets) ** -2
    weights = raw / raw.sum()
    return weights, math.fsum((weights * responses).tolist())


def mle_refine(
    responses: ArrayLike,
    init: float,
    config: EstimatorConfig,
    newton: bool = False,
) -> MleResult:
    """
    Solve the estimating equation σ² = Σ_j w_j(σ²)·r_j for one block.

    The default solver is the damped fixed-point iteration σ² ← (1-γ)σ² + γ·RHS(σ²) with
    γ = 0.5; ``newton`` takes a single Newton step on RHS(σ²) - σ² instead. The returned value
    is the right-hand side at the final iterate, which is the exact root for J = 1.

    Args:
        responses: Column r_jk = h⁻²π²j²((y⁰_jk)² - ν_jk), j = 1..J, of one block
        init: Starting value, > 0
        config: Estimator configuration (supplies h₀)
        newton: Use one Newton step

    Returns:
        MleResult; ``converged`` is false when the iterate left (0, upper bound] and was
        projected back
    """
    if not init > 0.0:
        raise DomainError(f"initial spot variance must be positive, got {init}")
    r = np.asarray(responses, dtype=float)
    offsets = frequency_offsets(config.h0, r.size)

    s = float(init)
    weights, rhs = _weights_and_rhs(s, r, offsets)
    residual = rhs - s

    if newton:
        # d w_j / ds = w_j (-2/(s + c_j) + 2 Σ_l w_l/(s + c_l))
        inverse = 1.0 / (s + offsets)
        dw = weights * (-2.0 * inverse + 2.0 * float(np.dot(weights, inverse)))
        slope = float(np.dot(dw, r)) - 1.0
        step = s - residual / slope if slope != 0.0 else rhs
        return _finish(step, r, offsets, 1)

    for iteration in range(1, MAX_ITERATIONS + 1):
        if abs(residual) <= TOLERANCE * max(1.0, s):
            return MleResult(rhs, rhs, True, iteration - 1, residual)
        candidate = (1.0 - DAMPING) * s + DAMPING * rhs
        if not LOWER_BOUND <= candidate <= UPPER_BOUND:
            return _finish(candidate, r, offsets, iteration)
        s = candidate
        weights, rhs = _weights_and_rhs(s, r, offsets)
        residual = rhs - s

    converged = abs(residual) <= TOLERANCE * max(1.0, s)
    if not converged:
        logger.debug("Block refinement stopped at the iteration cap, residual %g", residual)
    return MleResult(rhs if converged else s, rhs, converged, MAX_ITERATIONS, residual)


def _finish(
    candidate: float, r: NDArray[np.float64], offsets: NDArray[np.float64], iterations: int
) -> MleResult:
    projected = min(max(candidate, LOWER_BOUND), UPPER_BOUND)
    _, rhs = _weights_and_rhs(projected, r, offsets)
    residual = rhs - projected
    inside = projected == candidate
    converged = inside and abs(residual) <= TOLERANCE * max(1.0, projected)
    return MleResult(projected, rhs, converged, iterations, residual)

"""Data models for volatility curves and noisy observation series."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np
from numpy.polynomial import Polynomial
from numpy.typing import ArrayLike, NDArray
from scipy.special import cosdg, sindg

from model.errors import ConfigurationError, DomainError

# Resolution of the positivity scan run at construction time
POSITIVITY_GRID = 10_000


class CurveKind(str, Enum):
    """Closed-form families a volatility curve can belong to."""

    CONSTANT = "constant"
    SHIFTED_QUARTIC = "shifted-quartic"
    COSINE_PERTURBATION = "cosine-perturbation"
    SINUSOID = "sinusoid"
    TABULATED = "tabulated"


_PARAM_COUNTS = {
    CurveKind.CONSTANT: 1,
    CurveKind.SHIFTED_QUARTIC: 3,
    CurveKind.COSINE_PERTURBATION: 2,
    CurveKind.SINUSOID: 3,
    CurveKind.TABULATED: 0,
}


@dataclass(frozen=True)
class VolatilityCurve:
    """
    Deterministic volatility σ(t) on [0, 1].

    Parameters per kind:
        constant:            (σ,)
        shifted-quartic:     (a, b, c) with σ(t) = a + b(t - c)^4
        cosine-perturbation: (n_freq, α) with σ²(t) = 1 + n_freq^-α cos(π n_freq t)
        sinusoid:            (a, b, f) with σ(t) = a + b sin(2π f t)
        tabulated:           knots (t_i, σ_i), σ interpolated linearly

    Set ``strict=False`` to skip the positivity scan (degenerate test curves only).
    """

    kind: CurveKind
    params: tuple[float, ...] = ()
    knots: tuple[float, ...] = ()
    sigmas: tuple[float, ...] = ()
    source: Optional[str] = None
    strict: bool = True

    def __post_init__(self) -> None:
        """Validate parameters and positivity."""
        expected = _PARAM_COUNTS[self.kind]
        if len(self.params) != expected:
            raise ConfigurationError(
                f"{self.kind.value} curve takes {expected} parameters, got {len(self.params)}"
            )
        if not all(np.isfinite(self.params)):
            raise DomainError(f"{self.kind.value} curve parameters must be finite")
        if self.kind is CurveKind.COSINE_PERTURBATION:
            n_freq, _ = self.params
            if n_freq < 1 or n_freq != int(n_freq):
                raise DomainError("cosine perturbation frequency must be a positive integer")
        if self.kind is CurveKind.TABULATED:
            self._check_knots()
        if self.strict:
            self._check_positive()

    # Constructors

    @classmethod
    def constant(cls, level: float) -> "VolatilityCurve":
        return cls(CurveKind.CONSTANT, (float(level),))

    @classmethod
    def shifted_quartic(cls, a: float, b: float, c: float) -> "VolatilityCurve":
        return cls(CurveKind.SHIFTED_QUARTIC, (float(a), float(b), float(c)))

    @classmethod
    def cosine_perturbation(cls, n_freq: int, alpha: float) -> "VolatilityCurve":
        return cls(CurveKind.COSINE_PERTURBATION, (float(n_freq), float(alpha)))

    @classmethod
    def sinusoid(cls, a: float, b: float, f: float) -> "VolatilityCurve":
        return cls(CurveKind.SINUSOID, (float(a), float(b), float(f)))

    @classmethod
    def tabulated(
        cls,
        knots: ArrayLike,
        sigmas: ArrayLike,
        source: Optional[str] = None,
        strict: bool = True,
    ) -> "VolatilityCurve":
        t = tuple(float(x) for x in np.asarray(knots, dtype=float).ravel())
        s = tuple(float(x) for x in np.asarray(sigmas, dtype=float).ravel())
        return cls(CurveKind.TABULATED, knots=t, sigmas=s, source=source, strict=strict)

    # Pointwise evaluation

    def sigma(self, t: ArrayLike) -> NDArray[np.float64]:
        """Evaluate σ(t) (vectorized, no domain check)."""
        t_arr = np.asarray(t, dtype=float)
        if self.kind is CurveKind.COSINE_PERTURBATION:
            return np.asarray(np.sqrt(np.maximum(self.sigma2(t_arr), 0.0)), dtype=float)
        if self.kind is CurveKind.CONSTANT:
            return np.full_like(t_arr, self.params[0], dtype=float)
        if self.kind is CurveKind.SHIFTED_QUARTIC:
            a, b, c = self.params
            return np.asarray(a + b * (t_arr - c) ** 4, dtype=float)
        if self.kind is CurveKind.SINUSOID:
            a, b, f = self.params
            return np.asarray(a + b * sindg(360.0 * f * t_arr), dtype=float)
        return np.asarray(np.interp(t_arr, self.knots, self.sigmas), dtype=float)

    def sigma2(self, t: ArrayLike) -> NDArray[np.float64]:
        """Evaluate σ²(t) (vectorized, no domain check)."""
        t_arr = np.asarray(t, dtype=float)
        if self.kind is CurveKind.COSINE_PERTURBATION:
            n_freq, alpha = self.params
            amplitude = n_freq ** (-alpha)
            return np.asarray(1.0 + amplitude * cosdg(180.0 * n_freq * t_arr), dtype=float)
        return np.asarray(self.sigma(t_arr) ** 2, dtype=float)

    def variance_antiderivative(self, t: ArrayLike) -> NDArray[np.float64]:
        """
        Closed-form A(t) = ∫₀ᵗ σ²(s) ds.

        Args:
            t: Times in [0, 1]

        Returns:
            Array of integrated variance values, same shape as ``t``
        """
        t_arr = np.asarray(t, dtype=float)
        if self.kind is CurveKind.CONSTANT:
            return np.asarray(self.params[0] ** 2 * t_arr, dtype=float)
        if self.kind is CurveKind.SHIFTED_QUARTIC:
            a, b, c = self.params
            antiderivative = (Polynomial([a, 0.0, 0.0, 0.0, b]) ** 2).integ()
            return np.asarray(antiderivative(t_arr - c) - antiderivative(-c), dtype=float)
        if self.kind is CurveKind.COSINE_PERTURBATION:
            n_freq, alpha = self.params
            amplitude = n_freq ** (-alpha)
            wave = sindg(180.0 * n_freq * t_arr) / (np.pi * n_freq)
            return np.asarray(t_arr + amplitude * wave, dtype=float)
        if self.kind is CurveKind.SINUSOID:
            a, b, f = self.params
            omega = 2.0 * np.pi * f
            linear = (a * a + 0.5 * b * b) * t_arr
            first = 2.0 * a * b * (1.0 - cosdg(360.0 * f * t_arr)) / omega
            second = -b * b * sindg(720.0 * f * t_arr) / (4.0 * omega)
            return np.asarray(linear + first + second, dtype=float)
        return self._tabulated_antiderivative(t_arr)

    def _tabulated_antiderivative(self, t: NDArray[np.float64]) -> NDArray[np.float64]:
        # σ is linear on each knot segment, so ∫σ² is an exact cubic there
        knots = np.asarray(self.knots)
        sig = np.asarray(self.sigmas)
        lengths = np.diff(knots)
        slopes = np.diff(sig) / lengths
        s_left = sig[:-1]
        segment_mass = lengths * (
            s_left**2 + s_left * slopes * lengths + slopes**2 * lengths**2 / 3.0
        )
        cumulative = np.concatenate(([0.0], np.cumsum(segment_mass)))
        idx = np.clip(np.searchsorted(knots, t, side="right") - 1, 0, len(lengths) - 1)
        x = t - knots[idx]
        s0 = sig[idx]
        k = slopes[idx]
        partial = x * (s0**2 + s0 * k * x + k**2 * x**2 / 3.0)
        return np.asarray(cumulative[idx] + partial, dtype=float)

    # Validation helpers

    def _check_knots(self) -> None:
        if len(self.knots) < 2 or len(self.knots) != len(self.sigmas):
            raise ConfigurationError("tabulated curve needs at least two (t, sigma) knots")
        knots = np.asarray(self.knots)
        if np.any(np.diff(knots) <= 0.0):
            raise ConfigurationError("tabulated knots must be strictly increasing in t")
        if knots[0] != 0.0 or knots[-1] != 1.0:
            raise ConfigurationError("tabulated knots must cover t=0 and t=1")
        if not np.all(np.isfinite(self.sigmas)):
            raise DomainError("tabulated sigma values must be finite")

    def _check_positive(self) -> None:
        grid = np.linspace(0.0, 1.0, POSITIVITY_GRID + 1)
        if self.kind is CurveKind.TABULATED:
            grid = np.union1d(grid, np.asarray(self.knots))
        if self.kind is CurveKind.COSINE_PERTURBATION:
            values = self.sigma2(grid)
        else:
            values = self.sigma(grid)
        bad = np.flatnonzero(~(values > 0.0))
        if bad.size:
            t_bad = float(grid[bad[0]])
            raise DomainError(f"volatility must be strictly positive, violated at t={t_bad:.6g}")


@dataclass(frozen=True, eq=False)
class ObservationSeries:
    """Noisy samples Y_i = X_{i/n} + ε_i with their generating metadata."""

    n: int
    delta: float
    values: NDArray[np.float64]
    seed: Optional[int] = None
    times: NDArray[np.float64] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        """Validate the series."""
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.shape[0] != self.n:
            raise ConfigurationError(f"expected {self.n} observations, got {values.size}")
        if self.delta < 0.0 or not np.isfinite(self.delta):
            raise DomainError("noise level delta must be finite and nonnegative")
        if not np.all(np.isfinite(values)):
            raise DomainError("observations must be finite")
        values.setflags(write=False)
        times = np.arange(1, self.n + 1) / self.n
        times.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "times", times)

    def increments(self) -> NDArray[np.float64]:
        """Return Y_i - Y_{i-1} with the convention Y_0 := 0."""
        return np.diff(self.values, prepend=0.0)

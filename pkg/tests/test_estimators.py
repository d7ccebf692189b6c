"""Tests for spot pre-estimation, frequency weights and the integrated volatility estimators."""

import math
from typing import Any

import numpy as np
import pytest

from estimators.config import BiasCorrection, EstimatorConfig, SpotKernel, WeightMode
from estimators.iv import (
    asymptotic_sd,
    default_cutoff,
    estimate_from_observations,
    estimate_iv,
    estimate_iv_mle,
    finite_sample_sd,
    spot_pre_estimate,
    weights_for,
)
from estimators.mle import LOWER_BOUND, mle_refine
from estimators.spot import (
    MIN_SPOT_FLOOR,
    block_responses,
    floor_spot,
    local_linear_smooth,
    neighbour_responses,
    spot_block_estimate,
    spot_box,
    spot_local_linear,
)
from estimators.weights import compute_weights, frequency_offsets, oracle_spot
from model.curves import sigma_moment
from model.errors import ConfigurationError, DomainError, EstimationError
from model.schemas import VolatilityCurve
from model.simulation import simulate_observations
from spectral.grid import BlockGrid
from spectral.statistics import SpectralCoefficients, compute_spectral_stats, noise_variances

REFERENCE_N = 30_000
REFERENCE_DELTA = 0.01
REFERENCE_BLOCKS = 30
REFERENCE_J = 43


def _reference_config(**overrides: Any) -> EstimatorConfig:
    options: dict[str, Any] = {
        "grid": BlockGrid(n=REFERENCE_N, blocks=REFERENCE_BLOCKS),
        "J": REFERENCE_J,
        "delta": REFERENCE_DELTA,
    }
    options.update(overrides)
    return EstimatorConfig(**options)


# Configuration


def test_config_coerces_and_validates() -> None:
    config = _reference_config(weight_mode="oracle", bias_correction="exact", spot_kernel="box")
    assert config.weight_mode is WeightMode.ORACLE
    assert config.bias_correction is BiasCorrection.EXACT
    assert config.spot_kernel is SpotKernel.BOX
    assert config.h0 == pytest.approx(math.sqrt(REFERENCE_N) / (REFERENCE_BLOCKS * REFERENCE_DELTA))

    with pytest.raises(ConfigurationError):
        _reference_config(weight_mode="bayes")
    with pytest.raises(ConfigurationError):
        _reference_config(J=1001)
    with pytest.raises(ConfigurationError):
        _reference_config(spot_bandwidth=0.0)
    with pytest.raises(DomainError):
        _reference_config(delta=-0.1)


def test_noise_free_config_has_infinite_scale() -> None:
    config = _reference_config(delta=0.0)
    assert config.h0 == math.inf
    assert config.to_dict()["h0"] is None


# Spot estimation


def test_block_responses_remove_noise_level() -> None:
    grid = BlockGrid(n=40, blocks=2)
    values = np.array([[0.1, 0.2], [0.3, 0.4]])
    stats = SpectralCoefficients(values=values, grid=grid, delta=0.2)
    responses = block_responses(stats, "paper")
    j = np.array([[1.0], [2.0]])
    expected = math.pi**2 * j**2 / 0.25 * (values**2 - 0.04 / 40)
    assert np.allclose(responses, expected, rtol=1e-14, atol=0.0)

    exact = block_responses(stats, BiasCorrection.EXACT)
    nu = noise_variances(grid, 2, 0.2)
    assert np.allclose(exact, math.pi**2 * j**2 / 0.25 * (values**2 - nu), rtol=1e-14)


def test_local_linear_reproduces_lines() -> None:
    x = (np.arange(10) + 0.5) / 10
    y = 2.0 + 3.0 * x
    assert np.allclose(local_linear_smooth(x, y, x, 0.35), y, rtol=1e-12)
    assert np.allclose(local_linear_smooth(x, y, x, 0.35, leave_out=True), y, rtol=1e-12)
    assert local_linear_smooth(x, y, [0.0], 0.3)[0] == pytest.approx(2.0, rel=1e-12)


def test_local_linear_rejects_singular_design() -> None:
    x = (np.arange(10) + 0.5) / 10
    with pytest.raises(EstimationError):
        local_linear_smooth(x, x, x, 0.05)
    with pytest.raises(DomainError):
        local_linear_smooth(x, x, x[:3], 0.5, leave_out=True)


def test_floor_spot_default_rule() -> None:
    floored = floor_spot([-1.0, 0.5, 2.0])
    assert floored.tolist() == [5e-4, 0.5, 2.0]
    assert floor_spot([-1.0, 0.0]).tolist() == [MIN_SPOT_FLOOR, MIN_SPOT_FLOOR]
    assert floor_spot([0.1, 0.3], floor=0.2).tolist() == [0.2, 0.3]


def _flat_stats(blocks: int = 8) -> SpectralCoefficients:
    grid = BlockGrid(n=blocks * 10, blocks=blocks)
    values = np.full((2, blocks), 0.01)
    return SpectralCoefficients(values=values, grid=grid, delta=0.0)


def test_box_and_local_linear_agree_on_flat_responses() -> None:
    stats = _flat_stats()
    level = math.pi**2 * 0.01**2 * 64
    assert spot_block_estimate(stats, 0.5, 0.2) == pytest.approx(level, rel=1e-12)
    box = spot_box(stats, 0.3, leave_out=True)
    smooth = spot_local_linear(stats, 0.4, leave_out=True)
    assert np.allclose(box.values, level, rtol=1e-12)
    assert np.allclose(smooth.values, level, rtol=1e-12)
    assert box.kernel == "box" and smooth.kernel == "local-linear"
    assert smooth.to_dict()["centers"] == stats.grid.centers.tolist()


def test_box_window_must_not_be_empty() -> None:
    stats = _flat_stats(blocks=2)
    with pytest.raises(EstimationError):
        spot_block_estimate(stats, 0.25, 0.1, exclude=0)
    with pytest.raises(DomainError):
        spot_block_estimate(stats, 0.25, 0.0)


# Weights


def test_weights_are_normalized_and_decreasing() -> None:
    weights = compute_weights([0.5, 1.0, 2.0], h0=5.0, J=6)
    assert weights.shape == (6, 3)
    assert np.allclose(weights.sum(axis=0), 1.0, rtol=1e-14)
    assert np.all(np.diff(weights, axis=0) < 0.0)


def test_noise_free_weights_are_uniform() -> None:
    assert frequency_offsets(math.inf, 3).tolist() == [0.0, 0.0, 0.0]
    weights = compute_weights([0.5, 1.0], h0=math.inf, J=4)
    assert np.allclose(weights, 0.25)


def test_two_frequency_weights_example() -> None:
    weights = compute_weights([1.0], h0=10.0, J=2)[:, 0]
    assert weights.tolist() == pytest.approx([0.6170, 0.3829], abs=2e-4)
    first = (1.0 + math.pi**2 / 100) ** -2
    second = (1.0 + 4.0 * math.pi**2 / 100) ** -2
    assert weights[0] == pytest.approx(first / (first + second), rel=1e-14)
    assert np.array_equal(compute_weights([0.3, 1.0, 7.0], h0=10.0, J=1), np.ones((1, 3)))


def test_weights_reject_nonpositive_spot() -> None:
    with pytest.raises(DomainError):
        compute_weights([0.5, 0.0], h0=5.0, J=2)
    with pytest.raises(DomainError):
        frequency_offsets(0.0, 2)


def test_oracle_spot_averages_blocks() -> None:
    grid = BlockGrid(n=100, blocks=4)
    assert np.allclose(oracle_spot(VolatilityCurve.constant(1.5), grid), 2.25, rtol=1e-14)
    tab = VolatilityCurve.tabulated([0.0, 1.0], [1.0, 2.0])
    assert float(np.mean(oracle_spot(tab, grid))) == pytest.approx(7.0 / 3.0, rel=1e-13)


# Maximum-likelihood refinement


def test_single_frequency_refinement_returns_response() -> None:
    config = _reference_config(J=1)
    result = mle_refine([7e-4], init=1e-3, config=config)
    assert result.converged
    assert result.value == 7e-4
    newton = mle_refine([7e-4], init=1e-3, config=config, newton=True)
    assert newton.value == pytest.approx(7e-4, rel=1e-12)


def test_refinement_projects_negative_responses() -> None:
    config = _reference_config(J=1)
    result = mle_refine([-1e-3], init=1e-3, config=config)
    assert not result.converged
    assert result.value == LOWER_BOUND
    assert result.rhs == -1e-3


def test_refinement_solves_estimating_equation() -> None:
    config = _reference_config(J=5)
    responses = np.array([9e-4, 7e-4, 5e-4, 8e-4, 6e-4])
    result = mle_refine(responses, init=1e-3, config=config)
    assert result.converged
    weights = compute_weights([result.value], config.h0, 5)[:, 0]
    assert float(np.dot(weights, responses)) == pytest.approx(result.value, abs=1e-9)
    with pytest.raises(DomainError):
        mle_refine(responses, init=0.0, config=config)


def _idealized_stats(
    spot: list[float], grid: BlockGrid, J: int, delta: float
) -> SpectralCoefficients:
    # y² at its idealized mean h²π⁻²j⁻²σ² + δ²/n
    j = np.arange(1, J + 1, dtype=float)[:, None]
    levels = np.asarray(spot, dtype=float)[None, :]
    means = grid.h**2 * levels / (math.pi**2 * j**2) + delta**2 / grid.n
    return SpectralCoefficients(values=np.sqrt(means), grid=grid, delta=delta)


def test_refinement_recovers_idealized_level() -> None:
    config = _reference_config(J=10)
    stats = _idealized_stats([0.04], BlockGrid(n=1000, blocks=1), 10, REFERENCE_DELTA)
    responses = block_responses(stats)[:, 0]
    assert np.allclose(responses, 0.04, rtol=1e-12)
    result = mle_refine(responses, init=0.01, config=config)
    assert result.converged
    assert result.value == pytest.approx(0.04, abs=1e-8)
    assert 0 < result.iterations < 100


# Integrated volatility


def test_cutoff_rule() -> None:
    quartic = VolatilityCurve.shifted_quartic(0.02, 0.2, 0.5)
    reference_grid = BlockGrid(n=REFERENCE_N, blocks=REFERENCE_BLOCKS)
    assert default_cutoff(quartic, reference_grid, REFERENCE_DELTA) == 1
    grid = BlockGrid(n=1000, blocks=10)
    assert default_cutoff(VolatilityCurve.constant(1.0), grid, 0.001) == 64
    assert default_cutoff(VolatilityCurve.constant(1.0), grid, 0.0) == 100


def test_asymptotic_and_finite_sample_sd() -> None:
    quartic = VolatilityCurve.shifted_quartic(0.02, 0.2, 0.5)
    expected = REFERENCE_N**-0.25 * math.sqrt(8 * REFERENCE_DELTA * sigma_moment(quartic, 3))
    assert asymptotic_sd(quartic, REFERENCE_DELTA, REFERENCE_N) == pytest.approx(expected)
    # noise-free: Σ_k 2h²σ⁴/J
    grid = BlockGrid(n=100, blocks=10)
    assert finite_sample_sd(np.ones(10), grid, 0.0, 5) == pytest.approx(0.2, rel=1e-14)


def test_noise_free_estimate_is_close_to_truth() -> None:
    curve = VolatilityCurve.constant(1.0)
    obs = simulate_observations(curve, 4000, 0.0, seed=11)
    config = EstimatorConfig(grid=BlockGrid(n=4000, blocks=20), J=50, delta=0.0)
    estimate = estimate_from_observations(obs, config)
    assert abs(estimate.iv_hat - 1.0) < 0.2
    assert estimate.true_value is None


@pytest.mark.parametrize("mode", ["oracle", "adaptive", "mle"])
def test_reference_setting_estimates(mode: str) -> None:
    quartic = VolatilityCurve.shifted_quartic(0.02, 0.2, 0.5)
    obs = simulate_observations(quartic, REFERENCE_N, REFERENCE_DELTA, seed=2024)
    estimate = estimate_from_observations(obs, _reference_config(weight_mode=mode), quartic)
    assert estimate.true_value == pytest.approx(5.17361e-4, rel=1e-5)
    assert estimate.finite_sample_sd is not None and estimate.finite_sample_sd > 0.0
    assert abs(estimate.iv_hat - estimate.true_value) < 5.0 * estimate.finite_sample_sd
    if mode == "mle":
        assert estimate.mle_converged is not None
        assert 0 <= estimate.mle_converged <= REFERENCE_BLOCKS
    assert estimate.to_dict()["config"]["weight_mode"] == mode


def test_oracle_weights_need_curve() -> None:
    curve = VolatilityCurve.constant(1.0)
    obs = simulate_observations(curve, 200, 0.1, seed=1)
    config = EstimatorConfig(
        grid=BlockGrid(n=200, blocks=10), J=3, delta=0.1, weight_mode="oracle"
    )
    stats = compute_spectral_stats(obs, config.grid, config.J)
    with pytest.raises(ConfigurationError):
        weights_for(stats, config)


def test_estimate_checks_shapes_and_grid() -> None:
    curve = VolatilityCurve.constant(1.0)
    obs = simulate_observations(curve, 200, 0.1, seed=1)
    config = EstimatorConfig(grid=BlockGrid(n=200, blocks=10), J=3, delta=0.1)
    stats = compute_spectral_stats(obs, config.grid, 3)
    with pytest.raises(ConfigurationError):
        estimate_iv(stats, np.ones((2, 10)), config)
    other = EstimatorConfig(grid=BlockGrid(n=200, blocks=10), J=2, delta=0.1)
    with pytest.raises(ConfigurationError):
        estimate_iv(stats, np.ones((3, 10)) / 3, other)


def test_spot_pre_estimate_uses_configured_kernel() -> None:
    curve = VolatilityCurve.constant(1.0)
    obs = simulate_observations(curve, 2000, 0.0, seed=5)
    config = EstimatorConfig(
        grid=BlockGrid(n=2000, blocks=20), J=2, delta=0.0, spot_kernel="box", spot_bandwidth=0.2
    )
    stats = compute_spectral_stats(obs, config.grid, 2)
    spot = spot_pre_estimate(stats, config)
    assert spot.kernel == "box"
    assert spot.values.shape == (20,)
    assert np.all(spot.values > 0.0)


def test_default_pre_estimate_is_leave_out_box() -> None:
    config = _reference_config()
    assert config.spot_kernel is SpotKernel.BOX
    assert config.spot_bandwidth == 0.35
    assert config.spot_leave_out


@pytest.mark.parametrize("weight_mode", ["adaptive", "oracle"])
def test_idealized_statistics_give_block_riemann_sum(weight_mode: str) -> None:
    quartic = VolatilityCurve.shifted_quartic(0.02, 0.2, 0.5)
    grid = BlockGrid(n=3000, blocks=30)
    spot = oracle_spot(quartic, grid)
    stats = _idealized_stats(spot.tolist(), grid, 8, REFERENCE_DELTA)
    config = EstimatorConfig(grid=grid, J=8, delta=REFERENCE_DELTA, weight_mode=weight_mode)
    weights = weights_for(stats, config, quartic)
    estimate = estimate_iv(stats, weights, config, quartic)
    assert estimate.iv_hat == pytest.approx(grid.h * math.fsum(spot.tolist()), rel=1e-12)
    assert estimate.iv_hat == pytest.approx(sigma_moment(quartic, 2), rel=1e-12)


def test_neighbour_responses_leave_the_block_out() -> None:
    obs = simulate_observations(VolatilityCurve.constant(1.0), 400, 0.01, seed=4)
    grid = BlockGrid(n=400, blocks=10)
    stats = compute_spectral_stats(obs, grid, 3)
    pooled = neighbour_responses(stats, 0.25)
    responses = block_responses(stats)
    # centers are 0.1 apart: block 0 pools blocks 1 and 2
    assert np.allclose(pooled[:, 0], responses[:, 1:3].mean(axis=1), rtol=1e-14)

    values = np.array(stats.values)
    values[:, 4] *= 10.0
    changed = neighbour_responses(SpectralCoefficients(values=values, grid=grid, delta=0.01), 0.25)
    assert np.array_equal(changed[:, 4], pooled[:, 4])
    assert not np.array_equal(changed[:, 3], pooled[:, 3])

    with pytest.raises(EstimationError):
        neighbour_responses(_flat_stats(blocks=2), 0.1)


def test_mle_weights_do_not_see_their_own_block() -> None:
    obs = simulate_observations(VolatilityCurve.constant(0.2), 2000, 0.01, seed=6)
    config = EstimatorConfig(grid=BlockGrid(n=2000, blocks=20), J=5, delta=0.01, weight_mode="mle")
    stats = compute_spectral_stats(obs, config.grid, config.J)
    init = spot_pre_estimate(stats, config).values
    estimate = estimate_iv_mle(stats, init, config)

    pooled = neighbour_responses(stats, config.spot_bandwidth)
    refined = [mle_refine(pooled[:, k], float(init[k]), config).value for k in range(20)]
    weights = compute_weights(refined, config.h0, config.J)
    assert estimate.iv_hat == pytest.approx(estimate_iv(stats, weights, config).iv_hat, rel=1e-13)
    assert estimate.mle_converged is not None and estimate.mle_converged > 10
    with pytest.raises(ConfigurationError):
        estimate_iv_mle(stats, init[:5], config)


@pytest.mark.slow
def test_local_linear_removes_boundary_bias_of_box() -> None:
    # σ = 1 + t, so σ² rises with slope ≈ 2 at the left edge
    curve = VolatilityCurve.tabulated([0.0, 1.0], [1.0, 2.0])
    grid = BlockGrid(n=3000, blocks=30)
    truth = float(oracle_spot(curve, grid)[0])
    centers = grid.centers
    box, smooth = [], []
    for seed in range(500):
        stats = compute_spectral_stats(simulate_observations(curve, 3000, 0.001, seed), grid, 1)
        box.append(spot_block_estimate(stats, centers[0], 0.35, exclude=0))
        responses = block_responses(stats)[0]
        smooth.append(local_linear_smooth(centers, responses, centers, 0.35, leave_out=True)[0])
    box_bias = float(np.mean(box)) - truth
    smooth_bias = float(np.mean(smooth)) - truth
    assert box_bias > 0.25
    assert abs(smooth_bias) < box_bias

"""Tests for seeding, configuration and the Monte Carlo harness."""

import json
from pathlib import Path

import numpy as np
import pytest

from mc.config import DEFAULT_REPS, McConfig, load_mc_config
from mc.harness import run_mc, run_replicate, write_report, write_report_replicates
from mc.seeding import MASK64, splitmix64, substream_seed
from mc.summary import summarize
from model.errors import ConfigurationError, CurveSpecError, DomainError

SMALL = {"curve": "quartic:0.02,0.2,0.5", "n": 600, "delta": 0.01, "blocks": 10, "J": 6}


# Seeding


def test_splitmix_reference_value() -> None:
    assert substream_seed(0, 0) == 0xE220A8397B1DCDAF
    assert splitmix64(0) == 0


def test_substreams_are_distinct() -> None:
    seeds = {substream_seed(12345, rep) for rep in range(10_000)}
    assert len(seeds) == 10_000
    assert all(0 <= seed <= MASK64 for seed in seeds)


def test_substream_argument_checks() -> None:
    with pytest.raises(DomainError):
        substream_seed(0, -1)
    with pytest.raises(DomainError):
        substream_seed(1 << 64, 0)


# Configuration


def test_config_defaults_and_echo() -> None:
    config = McConfig.from_dict(SMALL)
    assert config.reps == DEFAULT_REPS
    assert config.base_seed == 0
    data = config.to_dict()
    assert "threads" not in data
    assert data["curve"] == SMALL["curve"]
    assert config.estimator_config().J == 6
    assert data["spot_kernel"] == "box"
    assert data["spot_bandwidth"] == 0.35


def test_config_rejects_bad_input() -> None:
    with pytest.raises(ConfigurationError):
        McConfig.from_dict({**SMALL, "colour": "red"})
    with pytest.raises(ConfigurationError):
        McConfig.from_dict({key: SMALL[key] for key in ("curve", "n", "delta")})
    with pytest.raises(ConfigurationError):
        McConfig.from_dict({**SMALL, "reps": 0})
    with pytest.raises(ConfigurationError):
        McConfig.from_dict({**SMALL, "blocks": 7})
    with pytest.raises(CurveSpecError):
        McConfig.from_dict({**SMALL, "curve": "quartic:1,2"})
    with pytest.raises(ConfigurationError, match="curve spec string"):
        McConfig.from_dict({**SMALL, "curve": 0.02})


def test_load_config_applies_overrides(tmp_path: Path) -> None:
    path = tmp_path / "study.json"
    path.write_text(json.dumps({**SMALL, "reps": 5}))
    config = load_mc_config(path, reps=None, base_seed=9)
    assert config.reps == 5
    assert config.base_seed == 9
    path.write_text("[1, 2]")
    with pytest.raises(ConfigurationError):
        load_mc_config(path)


# Summary


def test_summarize_statistics() -> None:
    report = summarize([1.0, 2.0, 3.0, 4.0], true_value=2.0, asymptotic_sd=1.0)
    assert report.mean == 2.5
    assert report.bias == 0.5
    assert report.sd == pytest.approx(np.std([1, 2, 3, 4], ddof=1))
    assert report.rmse == pytest.approx(np.sqrt(6.0 / 4.0))
    assert report.rmse_over_asymptotic == pytest.approx(report.rmse)
    assert report.quantiles["q50"] == 2.5
    assert list(report.quantiles) == ["q05", "q25", "q50", "q75", "q95"]
    assert report.rmse_se > 0.0


def test_rmse_splits_into_bias_and_spread() -> None:
    samples = np.random.default_rng(5).normal(1.3, 0.4, size=257)
    report = summarize(samples, true_value=1.0)
    spread = report.sd**2 * (report.reps - 1) / report.reps
    assert report.rmse**2 == pytest.approx(report.bias**2 + spread, rel=1e-10)


def test_summarize_rejects_empty_sample() -> None:
    with pytest.raises(DomainError):
        summarize([], true_value=1.0)


def test_wall_time_is_opt_in() -> None:
    report = summarize([1.0, 2.0], true_value=1.0, wall_time=3.5)
    assert "wall_time" not in report.to_dict()
    assert report.to_dict(include_wall_time=True)["wall_time"] == 3.5


# Harness


def test_replicates_are_reproducible() -> None:
    config = McConfig.from_dict({**SMALL, "reps": 3, "base_seed": 7})
    assert run_replicate(config, 1) == run_replicate(config, 1)
    assert run_replicate(config, 1) != run_replicate(config, 2)


def test_report_is_identical_for_any_thread_count() -> None:
    config = McConfig.from_dict({**SMALL, "reps": 12, "base_seed": 3})
    serial = run_mc(config, threads=1)
    parallel = run_mc(config, threads=8)
    assert serial.estimates == parallel.estimates
    assert json.dumps(serial.to_dict()) == json.dumps(parallel.to_dict())
    assert serial.reps == 12
    assert serial.true_value == pytest.approx(5.17361e-4, rel=1e-5)
    assert serial.asymptotic_sd is not None


def test_report_files(tmp_path: Path) -> None:
    config = McConfig.from_dict({**SMALL, "reps": 4})
    report = run_mc(config)
    report_path = tmp_path / "report.json"
    write_report(report, report_path)
    data = json.loads(report_path.read_text())
    assert data["config"]["n"] == 600
    assert "wall_time" not in data

    replicates_path = tmp_path / "reps.csv"
    write_report_replicates(report, replicates_path)
    lines = replicates_path.read_text().splitlines()
    assert lines[0] == "rep,iv_hat"
    assert len(lines) == 5
    assert float(lines[1].split(",")[1]) == report.estimates[0]

"""Tests for the spectralvol command line."""

import json
from pathlib import Path
from typing import Any

import pytest

import cli
from cli import dispatch

REFERENCE_SPEC = "quartic:0.02,0.2,0.5"


def _run(capsys: pytest.CaptureFixture[str], *argv: str) -> dict[str, Any]:
    assert dispatch(list(argv)) == 0
    result: dict[str, Any] = json.loads(capsys.readouterr().out)
    return result


def test_help_exits_cleanly(capsys: pytest.CaptureFixture[str]) -> None:
    assert dispatch(["--help"]) == 0
    assert "spectralvol" in capsys.readouterr().out


def test_usage_errors(capsys: pytest.CaptureFixture[str]) -> None:
    assert dispatch([]) == 1
    assert dispatch(["fisher", "--theta", "1"]) == 1
    assert dispatch(["verify", "counterexample", "--n", "10,x"]) == 1
    assert "usage:" in capsys.readouterr().err


def test_validation_errors(capsys: pytest.CaptureFixture[str]) -> None:
    assert dispatch(["fisher", "--theta", "0", "--h0", "1"]) == 1
    assert dispatch(["--log-level", "chatty", "fisher", "--theta", "1", "--h0", "1"]) == 1
    assert dispatch(["verify", "efficiency", "--curve", "quartic:1,x,2"]) == 1
    assert "error:" in capsys.readouterr().err


def test_runtime_errors(monkeypatch: pytest.MonkeyPatch) -> None:
    def broken(lam: float, J: int) -> None:
        raise RuntimeError("boom")

    monkeypatch.setattr(cli, "series_identity", broken)
    assert dispatch(["verify", "series", "--lambda", "1"]) == 2


def test_simulate_then_estimate(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    obs = tmp_path / "obs.csv"
    simulated = _run(
        capsys,
        "simulate",
        "--curve", REFERENCE_SPEC,
        "--n", "600",
        "--delta", "0.01",
        "--seed", "5",
        "--out", str(obs),
    )  # fmt: skip
    assert simulated["n"] == 600 and obs.exists()

    common = ["--obs", str(obs), "--delta", "0.01", "--blocks", "10"]
    estimate = _run(capsys, "estimate", "iv", *common, "--curve", REFERENCE_SPEC)
    assert estimate["true_value"] == pytest.approx(5.17361e-4, rel=1e-5)
    assert 1 <= estimate["config"]["J"] <= 60
    assert isinstance(estimate["iv_hat"], float)

    mle = _run(capsys, "estimate", "iv", *common, "--J", "4", "--weights", "mle")
    assert "mle_converged_blocks" in mle

    spot = _run(capsys, "estimate", "spot", *common, "--J", "3", "--spot-kernel", "box")
    assert len(spot["values"]) == 10
    assert spot["kernel"] == "box"

    assert dispatch(["estimate", "iv", *common]) == 1


def test_fisher_command(capsys: pytest.CaptureFixture[str]) -> None:
    report = _run(capsys, "fisher", "--theta", "1", "--h0", "10", "--J", "50")
    assert report["J"] == 50
    assert report["value_partial"] < report["value_closed"]


def test_verify_series(capsys: pytest.CaptureFixture[str]) -> None:
    report = _run(capsys, "verify", "series", "--lambda", "1")
    assert report["passed"]
    assert report["J"] == 1_000_000


def test_verify_fisher(capsys: pytest.CaptureFixture[str]) -> None:
    report = _run(capsys, "verify", "fisher")
    assert report["passed"]
    assert [(row["theta"], row["h0"]) for row in report["rows"]] == [
        (1.0, 10.0),
        (0.25, 50.0),
        (4.0, 3.0),
    ]
    assert all(row["scaling_rel_error"] < 1e-12 for row in report["rows"])


def test_verify_counterexample_and_efficiency(capsys: pytest.CaptureFixture[str]) -> None:
    assert _run(capsys, "verify", "counterexample")["passed"]
    table = _run(capsys, "verify", "efficiency")
    assert table["curve"] == REFERENCE_SPEC
    assert table["global_tuning_ratio"] == pytest.approx(1.0191, abs=1e-3)
    assert table["single_frequency"]["efficiency"] == pytest.approx(0.6430, rel=1e-3)


def test_mc_command(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    config = tmp_path / "study.json"
    config.write_text(
        json.dumps({"curve": REFERENCE_SPEC, "n": 600, "delta": 0.01, "blocks": 10, "J": 6})
    )
    replicates = tmp_path / "reps.csv"
    report = _run(
        capsys,
        "mc",
        "--config", str(config),
        "--reps", "3",
        "--threads", "2",
        "--replicates-out", str(replicates),
    )  # fmt: skip
    assert report["reps"] == 3
    assert "wall_time" not in report
    assert len(replicates.read_text().splitlines()) == 4

    flags = _run(
        capsys,
        "mc",
        "--curve", REFERENCE_SPEC,
        "--n", "600",
        "--delta", "0.01",
        "--blocks", "10",
        "--J", "6",
        "--reps", "2",
        "--wall-time",
    )  # fmt: skip
    assert flags["reps"] == 2
    assert flags["wall_time"] >= 0.0


def test_mc_config_with_non_string_curve(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    config = tmp_path / "study.json"
    config.write_text(json.dumps({"curve": 0.02, "n": 600, "delta": 0.01, "blocks": 10, "J": 6}))
    assert dispatch(["mc", "--config", str(config), "--reps", "2"]) == 1
    assert "curve spec string" in capsys.readouterr().err

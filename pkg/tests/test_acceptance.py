"""Monte Carlo acceptance runs in the full-size reference setting."""

import math
import os

import pytest

from mc.config import McConfig
from mc.harness import run_mc
from mc.summary import McReport

pytestmark = pytest.mark.slow

REFERENCE = {
    "curve": "quartic:0.02,0.2,0.5",
    "n": 30_000,
    "delta": 0.01,
    "blocks": 30,
    "J": 43,
    "reps": 2000,
}
THREADS = os.cpu_count() or 1


@pytest.fixture(scope="module", params=[0, 12345], ids=["seed0", "seed12345"])
def adaptive(request: pytest.FixtureRequest) -> McReport:
    config = McConfig.from_dict({**REFERENCE, "base_seed": request.param})
    return run_mc(config, threads=THREADS)


@pytest.fixture(scope="module")
def oracle() -> McReport:
    return run_mc(McConfig.from_dict({**REFERENCE, "weight_mode": "oracle"}), threads=THREADS)


@pytest.fixture(scope="module")
def mle() -> McReport:
    return run_mc(McConfig.from_dict({**REFERENCE, "weight_mode": "mle"}), threads=THREADS)


def _within_three_standard_errors(report: McReport) -> bool:
    return abs(report.bias) <= 3.0 * report.sd / math.sqrt(report.reps)


def test_adaptive_estimator_is_unbiased(adaptive: McReport) -> None:
    assert _within_three_standard_errors(adaptive)


def test_adaptive_estimator_attains_the_bound(adaptive: McReport) -> None:
    assert adaptive.rmse_over_asymptotic is not None
    assert 0.95 <= adaptive.rmse_over_asymptotic <= 1.20


def test_oracle_estimator_attains_the_bound(oracle: McReport) -> None:
    assert oracle.rmse_over_asymptotic is not None
    assert 0.95 <= oracle.rmse_over_asymptotic <= 1.15
    assert _within_three_standard_errors(oracle)


def test_oracle_is_no_worse_than_adaptive(adaptive: McReport, oracle: McReport) -> None:
    assert oracle.rmse <= adaptive.rmse + 2.0 * adaptive.rmse_se


def test_mle_estimator_is_unbiased(mle: McReport) -> None:
    assert _within_three_standard_errors(mle)
    assert mle.config["weight_mode"] == "mle"


def test_estimates_stay_near_the_truth(adaptive: McReport) -> None:
    sd = adaptive.asymptotic_sd
    assert sd is not None
    inside = sum(abs(value - adaptive.true_value) <= 4.0 * sd for value in adaptive.estimates)
    assert inside >= 0.99 * adaptive.reps

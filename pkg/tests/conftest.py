"""Shared fixtures."""

from typing import Iterator

import pytest

import settings
from model.schemas import VolatilityCurve
from spectral.cache import get_weight_cache


@pytest.fixture(autouse=True)
def clean_state(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """Isolate every test from the environment and the global caches."""
    for name in (
        "SPECTRALVOL_THREADS",
        "SPECTRALVOL_MC_REPS",
        "LOG_LEVEL",
        "ENABLE_WEIGHT_CACHE",
        "PORT",
        "PYTHON_ENV",
    ):
        monkeypatch.delenv(name, raising=False)
    settings.reset_settings()
    get_weight_cache().clear()
    yield
    settings.reset_settings()
    get_weight_cache().clear()


@pytest.fixture
def quartic() -> VolatilityCurve:
    return VolatilityCurve.shifted_quartic(0.02, 0.2, 0.5)


@pytest.fixture
def unit_curve() -> VolatilityCurve:
    return VolatilityCurve.constant(1.0)

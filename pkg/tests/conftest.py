"""Shared fixtures for the warpcurv test suite."""

import math
from pathlib import Path

import pytest

from warpcurv.ambient import EuclideanFiber, FlatTorus, WarpedAmbient
from warpcurv.config import reset_settings
from warpcurv.families import FourierMode, GeodesicSphere, Slice, TorusGraph
from warpcurv.quadrature import SampleCache

TWO_PI = 2.0 * math.pi
CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Every test starts from default settings."""
    for name in ("WARPCURV_THREADS", "WARPCURV_CHECK_TIMEOUT", "WARPCURV_NO_TIMESTAMP", "LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def torus_ambient() -> WarpedAmbient:
    return WarpedAmbient(2, FlatTorus((TWO_PI, TWO_PI)))


@pytest.fixture
def hyperbolic_ambient() -> WarpedAmbient:
    return WarpedAmbient(2, EuclideanFiber())


@pytest.fixture
def two_mode() -> TorusGraph:
    """u = 0.3 cos p1 + 0.1 sin p2."""
    return TorusGraph(modes=(FourierMode((1, 0), cos=0.3), FourierMode((0, 1), sin=0.1)))


@pytest.fixture
def unit_sphere() -> GeodesicSphere:
    return GeodesicSphere(rho=1.0, z0=1.0)


@pytest.fixture
def base_slice() -> Slice:
    return Slice(0.0)


@pytest.fixture
def cache() -> SampleCache:
    return SampleCache()

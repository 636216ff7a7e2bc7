"""Pytest configuration and fixtures."""

import pytest

from src.algebra.fields import QQ, prime_field
from src.algebra.poly import PolynomialRing
from src.algebra.rings import PresentedRing
from src.config.settings import SampleConfig, override_settings


@pytest.fixture(autouse=True)
def default_settings():
    """Reset the cached settings around every test."""
    override_settings()
    yield
    override_settings()


@pytest.fixture
def poly_ring():
    """QQ[x,y,z] as a bare polynomial ring (grevlex)."""
    return PolynomialRing(QQ, ("x", "y", "z"))


@pytest.fixture
def qq_xy():
    """The polynomial ring QQ[x,y]."""
    return PresentedRing.polynomial_ring(["x", "y"])


@pytest.fixture
def qq_xyz():
    """The polynomial ring QQ[x,y,z]."""
    return PresentedRing.polynomial_ring(["x", "y", "z"])


@pytest.fixture
def example_ring():
    """QQ[x,y,z]/(x^2, x*y), where x and y are zero-divisors and z is regular."""
    return PresentedRing.quotient(["x", "y", "z"], ["x^2", "x*y"], name="R")


@pytest.fixture
def gf_example_ring():
    """GF(101)[x,y,z]/(x^2, x*y)."""
    return PresentedRing.quotient(["x", "y", "z"], ["x^2", "x*y"], field=prime_field(101))


@pytest.fixture
def small_sample_config():
    """A small, fixed-seed sampling configuration for the axiom checker."""
    return SampleConfig(seed=7, samples=12, max_generators=3, max_degree=3, degree_bound=4)


@pytest.fixture
def worked_session():
    """Session computing the standardized radical of (x, y*z) in QQ[x,y,z]/(x^2, x*y)."""
    return (
        "ring R = QQ[x,y,z]/(x^2, x*y);\n"
        "ideal I = (x, y*z);\n"
        "print standardized_radical(I);\n"
    )

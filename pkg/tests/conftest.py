"""Pytest configuration and shared fixtures for the tropical workbench tests."""

import json
import os
from fractions import Fraction

import pytest

# Set up test environment variables BEFORE any imports
os.environ["ENV"] = "test"
os.environ["LOG_LEVEL"] = "DEBUG"
os.environ["SOLVER_ENGINE"] = "auto"
os.environ["CAMPAIGN_WORKERS"] = "1"

from src.tropical.polynomial import TropPoly  # noqa: E402
from src.utils.metrics import metrics_collector  # noqa: E402


def univariate(terms):
    """``{exponent: coefficient}`` shorthand used throughout the tests."""
    return TropPoly.univariate(terms)


def system_json(system):
    """Raw system file contents for a list of polynomials."""
    return {
        "n": system[0].n,
        "polys": [
            [{"exp": list(exps), "coef": str(coeff)} for exps, coeff in f.items()]
            for f in system
        ],
    }


@pytest.fixture
def disjoint_pair():
    """{X ⊕ 0, X ⊕ 1}: roots 0 and 1, no common root."""
    return [univariate({1: 0, 0: 0}), univariate({1: 0, 0: 1})]


@pytest.fixture
def single_linear():
    """{X ⊕ 0}: the only root is 0."""
    return [univariate({1: 0, 0: 0})]


@pytest.fixture
def shared_root_pair():
    """{X ⊕ 0, 0 ⊕ 0X²}: common root 0."""
    return [univariate({1: 0, 0: 0}), univariate({0: 0, 2: 0})]


@pytest.fixture
def quadratic():
    """2 ⊕ 0X ⊕ 1X²: roots -1 and 2."""
    return univariate({0: 2, 1: 0, 2: 1})


@pytest.fixture
def bivariate_line():
    """0 ⊕ X ⊕ Y: the tropical line through the origin."""
    return TropPoly(2, {(0, 0): 0, (1, 0): 0, (0, 1): 0})


@pytest.fixture
def write_json(tmp_path):
    """Write JSON data to a file under tmp_path and return its path."""
    def _write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture
def system_file(write_json):
    """Write a system to a JSON file and return its path."""
    def _system_file(system, name="system.json"):
        return write_json(name, system_json(system))
    return _system_file


@pytest.fixture
def zero_witness():
    """The all-zero witness for a list of columns."""
    def _zero(columns):
        return {col: Fraction(0) for col in columns}
    return _zero


@pytest.fixture(autouse=True)
def reset_metrics():
    """Start every test with empty metrics."""
    metrics_collector.reset()
    yield
    metrics_collector.reset()


# Pytest configuration
def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line(
        "markers", "unit: Fast tests of a single module"
    )
    config.addinivalue_line(
        "markers", "integration: Tests running commands end to end"
    )
    config.addinivalue_line(
        "markers", "slow: Acceptance-scale campaigns"
    )

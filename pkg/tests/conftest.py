import numpy as np
import pytest

from sdiqkd.rac import bb84_setup, mixed_setup, optimal_setup


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)


@pytest.fixture
def bb84():
    return bb84_setup()


@pytest.fixture
def optimal():
    return optimal_setup()


@pytest.fixture
def mixed():
    return mixed_setup()


def random_ball(rng, n):
    """n points uniform in the unit ball."""
    v = rng.normal(size=(n, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v * rng.random(n)[:, None] ** (1 / 3)


def random_sphere(rng, n):
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.summary_lines():
            terminalreporter.write_line(line)

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdiqkd.qubit import (
    BinaryMeasurement,
    UnphysicalError,
    bloch_to_density,
    born_one_prob,
    born_zero_prob,
    born_zero_prob_matrix,
    check_density,
    density_to_bloch,
    project_after_measurement,
)

from conftest import random_ball, random_sphere

COS2_PI8 = np.cos(np.pi / 8) ** 2


def test_bloch_to_density_examples():
    np.testing.assert_allclose(bloch_to_density([0, 0, 1]), np.diag([1, 0]), atol=1e-15)
    np.testing.assert_allclose(bloch_to_density([0, 0, 0]), np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(bloch_to_density([1, 0, 0]), np.full((2, 2), 0.5), atol=1e-15)


def test_unphysical_state_rejected():
    with pytest.raises(UnphysicalError):
        bloch_to_density([1, 1, 0])
    # tolerance band is 1e-12
    bloch_to_density([0, 0, 1 + 1e-13])


def test_measurement_axis_must_be_unit():
    with pytest.raises(UnphysicalError):
        BinaryMeasurement(np.array([0, 0, 2.0]))
    m = BinaryMeasurement.along([1, 0, 1])
    assert np.isclose(np.linalg.norm(m.axis), 1, atol=1e-15)


def test_effects_are_projectors_summing_to_identity():
    m = BinaryMeasurement.along([0.3, -0.2, 0.9])
    p0, p1 = m.effects()
    np.testing.assert_allclose(p0 + p1, np.eye(2), atol=1e-12)
    np.testing.assert_allclose(p0 @ p0, p0, atol=1e-12)
    np.testing.assert_allclose(p1 @ p1, p1, atol=1e-12)


@pytest.mark.parametrize(
    "state, axis, expected",
    [
        ([0, 0, 1], [0, 0, 1], 1.0),
        ([0, 0, 0], [0.6, 0, 0.8], 0.5),
        ([0, 0, 1], np.array([1, 0, 1]) / np.sqrt(2), COS2_PI8),
    ],
)
def test_born_examples(state, axis, expected):
    assert born_zero_prob(state, BinaryMeasurement(np.asarray(axis, float))) == pytest.approx(expected, abs=1e-12)


def test_born_bloch_matches_trace_form(rng):
    states = random_ball(rng, 1000)
    axes = random_sphere(rng, 1000)
    for r, n in zip(states, axes):
        m = BinaryMeasurement(n)
        p = born_zero_prob(r, m)
        assert 0 <= p <= 1
        assert abs(p - born_zero_prob_matrix(r, m)) < 1e-12
        assert p + born_one_prob(r, m) == 1.0


def test_round_trip(rng):
    for r in random_ball(rng, 200):
        rho = check_density(bloch_to_density(r))
        np.testing.assert_allclose(density_to_bloch(rho), r, atol=1e-12)


@settings(max_examples=200)
@given(st.lists(st.floats(-1, 1), min_size=3, max_size=3))
def test_density_invariants(v):
    r = np.array(v)
    if np.linalg.norm(r) > 1:
        r = r / np.linalg.norm(r)
    rho = bloch_to_density(r)
    assert np.allclose(rho, rho.conj().T, atol=1e-12)
    assert abs(np.trace(rho) - 1) < 1e-12
    assert np.linalg.eigvalsh(rho).min() > -1e-12


def test_check_density_rejects_bad_matrices():
    with pytest.raises(UnphysicalError):
        check_density(np.diag([1.0, 1.0]))
    with pytest.raises(UnphysicalError):
        check_density(np.diag([1.5, -0.5]))
    with pytest.raises(UnphysicalError):
        check_density(np.array([[0.5, 0.5], [0.1, 0.5]]))


class TestProjection:
    def test_collapse_onto_eigenstate(self):
        z = BinaryMeasurement(np.array([0, 0, 1.0]))
        np.testing.assert_array_equal(project_after_measurement([1, 0, 0], z, 0), [0, 0, 1])
        np.testing.assert_array_equal(project_after_measurement([1, 0, 0], z, 1), [0, 0, -1])
        np.testing.assert_array_equal(project_after_measurement([0, 0, 1], z, 0), [0, 0, 1])

    def test_average_post_state_against_matrices(self, rng):
        # Luders rule in matrix form: sum_b Pi_b rho Pi_b
        for r, n in zip(random_ball(rng, 100), random_sphere(rng, 100)):
            m = BinaryMeasurement(n)
            avg = (born_zero_prob(r, m) * project_after_measurement(r, m, 0)
                   + born_one_prob(r, m) * project_after_measurement(r, m, 1))
            rho = bloch_to_density(r)
            p0, p1 = m.effects()
            luders = p0 @ rho @ p0 + p1 @ rho @ p1
            np.testing.assert_allclose(avg, density_to_bloch(luders), atol=1e-12)
            np.testing.assert_allclose(avg, (r @ n) * n, atol=1e-12)


def test_constant_measurement():
    m = BinaryMeasurement.fixed(0)
    assert born_zero_prob([0, 0, -1], m) == 1.0
    p0, p1 = m.effects()
    np.testing.assert_array_equal(p0, np.eye(2))
    assert born_zero_prob([1, 0, 0], BinaryMeasurement.fixed(1)) == 0.0

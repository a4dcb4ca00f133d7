from fractions import Fraction

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from sdiqkd import polytope
from sdiqkd.qubit import BinaryMeasurement
from sdiqkd.tables import (
    QuantumSetup,
    constant_table,
    deterministic_table,
    enumerate_strategies,
    mixture_table,
    quantum_table,
    random_mixture,
)
from sdiqkd.witness import (
    BudgetExceeded,
    Facet,
    ScenarioSymmetry,
    Witness,
    all_symmetries,
    apply_symmetry,
    apply_symmetry_witness,
    classical_bound,
    classical_vertices,
    enumerate_facets,
    eval_witness,
    facet_orbits,
    in_orbit,
    quantum_value_seesaw,
    symmetry_generators,
    witness_S,
)

from conftest import random_ball, random_sphere

SQRT8 = 2 * np.sqrt(2)
S = witness_S()


def brute_force_bound(w, d):
    """Independent oracle: loop over strategy objects one at a time."""
    return max(eval_witness(w, deterministic_table(s)) for s in enumerate_strategies(d))


class TestWitnessS:
    def test_coefficients(self):
        assert S.flat() == (1, 1, 1, -1, -1, 1, -1, -1)
        assert S.w[0, 0] == 1 and S.w[2, 0] == -1

    def test_rac_sign_identity(self):
        for a in range(4):
            bits = (a >> 1, a & 1)
            for y in range(2):
                assert S.w[a, y] == (-1) ** bits[y]

    def test_eval_examples(self, bb84, optimal):
        assert eval_witness(S, quantum_table(bb84)) == pytest.approx(2, abs=1e-12)
        assert eval_witness(S, constant_table(Fraction(1, 2))) == 0
        expected = 8 * np.cos(np.pi / 8) ** 2 - 4
        assert eval_witness(S, quantum_table(optimal)) == pytest.approx(expected, abs=1e-12)
        assert expected == pytest.approx(SQRT8, abs=1e-12)

    def test_json_round_trip(self):
        w = Witness(S.w, {2: Fraction(2)})
        d = w.to_json_dict()
        assert d == {"w": [[1, 1], [1, -1], [-1, 1], [-1, -1]], "bounds": {"2": "2/1"}}
        back = Witness.from_json_dict(d)
        assert back == w and back.bounds == {2: Fraction(2)}

    def test_rejects_non_integer(self):
        with pytest.raises(ValueError):
            Witness(np.full((4, 2), 0.5))


class TestClassicalBound:
    @pytest.mark.parametrize("d, expected", [(1, 0), (2, 2), (4, 4)])
    def test_S(self, d, expected):
        res = classical_bound(S, d)
        assert res.value == expected
        assert isinstance(res.value, Fraction)
        assert eval_witness(S, deterministic_table(res.strategy)) == res.value

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_against_oracle(self, rng, d):
        for _ in range(10):
            w = Witness(rng.integers(-3, 4, size=(4, 2)))
            assert classical_bound(w, d).value == brute_force_bound(w, d)

    def test_monotone_in_alphabet(self, rng):
        for _ in range(50):
            w = Witness(rng.integers(-5, 6, size=(4, 2)))
            c1, c2, c4 = (classical_bound(w, d).value for d in (1, 2, 4))
            assert c1 <= c2 <= c4

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            classical_bound(S, 8, budget=10**6)
        with pytest.raises(ValueError):
            classical_bound(S, 0)

    def test_random_mixtures_respect_bound(self, rng):
        for _ in range(1000):
            value = eval_witness(S, mixture_table(random_mixture(rng, 2, 5)))
            assert isinstance(value, Fraction)
            assert value <= 2


class TestSeesaw:
    def test_S_reaches_tsirelson_like_value(self):
        res = quantum_value_seesaw(S, restarts=20, seed=0)
        assert res.value == pytest.approx(SQRT8, abs=1e-9)
        assert eval_witness(S, quantum_table(res.setup)) == pytest.approx(res.value, abs=1e-12)

    def test_S_optimum_geometry(self):
        setup = quantum_value_seesaw(S, restarts=20, seed=3).setup
        n0, n1 = (m.axis for m in setup.measurements)
        r = np.array(setup.preparations)
        assert abs(n0 @ n1) < 1e-6
        # preparations form two antipodal pairs in mutually unbiased directions
        np.testing.assert_allclose(r[0], -r[3], atol=1e-6)
        np.testing.assert_allclose(r[1], -r[2], atol=1e-6)
        assert abs(r[0] @ r[1]) < 1e-6
        # each preparation bisects its pair of signed axes
        for a in range(4):
            v = S.w[a, 0] * n0 + S.w[a, 1] * n1
            assert r[a] @ v == pytest.approx(np.sqrt(2), abs=1e-6)

    def test_zero_witness(self):
        assert quantum_value_seesaw(Witness(np.zeros((4, 2))), restarts=3).value == 0

    def test_never_exceeds_bound(self):
        for restarts in (1, 2, 5, 20):
            for seed in range(5):
                assert quantum_value_seesaw(S, restarts, seed).value <= SQRT8 + 1e-9

    def test_at_least_classical(self, rng):
        for _ in range(50):
            w = Witness(rng.integers(-3, 4, size=(4, 2)))
            q = quantum_value_seesaw(w, restarts=20, seed=1).value
            assert q >= classical_bound(w, 2).value - 1e-9

    def test_deterministic_given_seed(self):
        a = quantum_value_seesaw(S, 4, seed=11)
        b = quantum_value_seesaw(S, 4, seed=11)
        assert a.value == b.value
        np.testing.assert_array_equal(np.array(a.setup.preparations), np.array(b.setup.preparations))

    def test_restarts_validated(self):
        with pytest.raises(ValueError):
            quantum_value_seesaw(S, restarts=0)


def test_random_qubit_setups_bounded(rng):
    for _ in range(1000):
        preps = random_ball(rng, 4)
        meas = [BinaryMeasurement(n) for n in random_sphere(rng, 2)]
        assert eval_witness(S, quantum_table(QuantumSetup(preps, meas))) <= SQRT8 + 1e-9


@pytest.fixture(scope="module")
def facets():
    return enumerate_facets(2)


@pytest.fixture(scope="module")
def vertices():
    return classical_vertices(2)


class TestFacets:
    def test_vertex_count(self, vertices):
        assert len(vertices) == 88
        assert polytope.affine_dimension(vertices) == 8

    def test_valid_and_tight(self, facets, vertices):
        dim = polytope.affine_dimension(vertices)
        for f in facets:
            ineq = polytope.Inequality(f.coefficients, int(f.offset))
            assert polytope.is_valid(ineq, vertices)
            tight = polytope.tight_points(ineq, vertices)
            assert polytope.affine_dimension(tight) == dim - 1

    def test_matches_qhull(self, facets, vertices):
        hull = ConvexHull(np.array(vertices, dtype=float))

        def key(normal, offset):
            scale = np.max(np.abs(normal))
            return tuple(np.round(np.append(normal, offset) / scale, 9))

        ours = {key(np.array(f.coefficients, float), -float(f.offset)) for f in facets}
        theirs = {key(eq[:-1], eq[-1]) for eq in hull.equations}
        assert ours == theirs

    def test_box_constraints(self, facets, vertices):
        keys = {(f.coefficients, f.offset) for f in facets}
        for i in range(8):
            lower = tuple(-int(j == i) for j in range(8))
            upper = tuple(int(j == i) for j in range(8))
            for w, c in ((lower, 0), (upper, 1)):
                ineq = polytope.Inequality(w, c)
                assert polytope.is_valid(ineq, vertices)
                # report per inequality; all sixteen turn out to be facets here
                assert polytope.is_facet(ineq, vertices) == ((w, c) in keys)
        assert sum(f.is_box for f in facets) == 16

    def test_S_is_a_facet(self, facets):
        target = Facet(S, Fraction(2))
        assert in_orbit(target, facets)
        assert (S.flat(), Fraction(2)) in {(f.coefficients, f.offset) for f in facets}

    def test_closed_under_symmetries(self, facets):
        keys = {(f.coefficients, f.offset) for f in facets}
        for g in symmetry_generators():
            for f in facets:
                h = f.transformed(g)
                assert (h.coefficients, h.offset) in keys

    def test_orbit_census(self, facets, record_property):
        orbits = facet_orbits([f for f in facets if not f.is_box])
        census = sorted((len(o), str(o[0].offset)) for o in orbits)
        record_property("nontrivial_facet_orbits", census)
        assert any(any(f.coefficients == S.flat() for f in o) for o in orbits)

    def test_json(self, facets):
        d = facets[0].to_json_dict()
        assert set(d) == {"w", "bounds", "offset"}
        assert "/" in d["offset"]

    def test_lower_dimensional_input(self):
        # a square embedded in 3D: four edges, each with zero third coefficient
        square = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
        fs = polytope.facets(square)
        assert len(fs) == 4
        assert all(polytope.is_facet(f, square) for f in fs)


class TestSymmetry:
    def test_identity(self, bb84):
        t = quantum_table(bb84)
        assert apply_symmetry(ScenarioSymmetry(), t) == t

    def test_y_swap_twice(self, bb84):
        t = quantum_table(bb84)
        g = ScenarioSymmetry(swap_y=True)
        assert apply_symmetry(g, apply_symmetry(g, t)) == t

    def test_double_flip_negates_S(self, optimal):
        t = quantum_table(optimal)
        g = ScenarioSymmetry(flips=(True, True))
        flipped = apply_symmetry(g, t)
        np.testing.assert_allclose(flipped.to_array(), 1 - t.to_array())
        assert eval_witness(S, flipped) == pytest.approx(-eval_witness(S, t), abs=1e-12)

    def test_group(self):
        group = all_symmetries()
        assert len(set(group)) == 192
        closure = {ScenarioSymmetry()}
        frontier = list(closure)
        while frontier:
            nxt = []
            for g in frontier:
                for h in symmetry_generators():
                    k = g.then(h)
                    if k not in closure:
                        closure.add(k)
                        nxt.append(k)
            frontier = nxt
        assert closure == set(group)

    def test_inverse_and_covariance(self, rng):
        group = all_symmetries()
        for _ in range(200):
            g = group[rng.integers(len(group))]
            t = mixture_table(random_mixture(rng, 2, 3))
            w = Witness(rng.integers(-3, 4, size=(4, 2)))
            assert apply_symmetry(g.inverse(), apply_symmetry(g, t)) == t
            assert g.then(g.inverse()) == ScenarioSymmetry()
            lhs = eval_witness(apply_symmetry_witness(g, w), apply_symmetry(g, t))
            assert lhs == eval_witness(w, t) + g.offset(w)

    def test_composition(self, rng):
        group = all_symmetries()
        t = mixture_table(random_mixture(rng, 2, 3))
        for _ in range(100):
            g, h = (group[i] for i in rng.integers(len(group), size=2))
            assert apply_symmetry(g.then(h), t) == apply_symmetry(h, apply_symmetry(g, t))


class TestBB84Deviations:
    """Empirical look at whether moving away from BB84 violates an S-type facet."""

    @pytest.fixture
    def s_class(self, facets):
        return [f for f in facets if f.offset == 2 and not f.is_box]

    @staticmethod
    def rot(theta):
        c, s = np.cos(theta), np.sin(theta)
        return np.array([[c, 0, s], [0, 1, 0], [-s, 0, c]])

    @staticmethod
    def max_violation(t, fs):
        return max(eval_witness(f.witness, t) - float(f.offset) for f in fs)

    def test_bb84_saturates_without_violation(self, bb84, s_class):
        assert self.max_violation(quantum_table(bb84), s_class) == pytest.approx(0, abs=1e-12)

    @pytest.mark.parametrize("theta", [-0.05, 0.05])
    @pytest.mark.parametrize("a", range(4))
    def test_rotating_one_preparation(self, bb84, s_class, a, theta):
        preps = list(bb84.preparations)
        preps[a] = self.rot(theta) @ preps[a]
        t = quantum_table(QuantumSetup(preps, bb84.measurements))
        assert self.max_violation(t, s_class) > 0.02

    @pytest.mark.parametrize("theta", [-0.05, 0.05])
    @pytest.mark.parametrize("y", range(2))
    def test_rotating_one_measurement(self, bb84, s_class, y, theta):
        meas = list(bb84.measurements)
        meas[y] = BinaryMeasurement(self.rot(theta) @ meas[y].axis)
        t = quantum_table(QuantumSetup(bb84.preparations, meas))
        assert self.max_violation(t, s_class) > 0.04

    def test_S_itself_can_drop(self, bb84):
        preps = list(bb84.preparations)
        preps[0] = self.rot(-0.05) @ preps[0]
        assert eval_witness(S, quantum_table(QuantumSetup(preps, bb84.measurements))) < 2

    def test_mixing_never_violates(self, bb84, s_class):
        preps = list(bb84.preparations)
        preps[0] = 0.9 * preps[0]
        t = quantum_table(QuantumSetup(preps, bb84.measurements))
        assert self.max_violation(t, s_class) <= 1e-12

"""Dimension witnesses: linear functionals ``sum_{a,y} w[a][y] E[a][y]``.

Includes exact classical bounds by exhaustive search, a see-saw lower bound
on the qubit value, exact facet enumeration of the d=2 classical polytope
and the relabelling symmetries of the scenario.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from . import polytope
from .qubit import BinaryMeasurement
from .tables import (
    DataTable,
    DeterministicStrategy,
    QuantumSetup,
    distinct_deterministic_tables,
)

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    """Exhaustive enumeration would exceed the configured strategy budget."""


def format_fraction(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s) -> Fraction:
    return Fraction(s)


class Witness:
    """Integer coefficients ``w[a][y]`` with a cache of classical bounds."""

    def __init__(self, coefficients, bounds: Optional[dict] = None):
        arr = np.asarray(coefficients)
        if arr.shape == (8,):
            arr = arr.reshape(4, 2)
        if arr.shape != (4, 2):
            raise ValueError("witness needs 4 x 2 coefficients")
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise ValueError("witness coefficients must be integers")
        self.w = arr.astype(np.int64)
        self.bounds: dict[int, Fraction] = dict(bounds or {})

    def flat(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.w.ravel())

    def __eq__(self, other):
        if not isinstance(other, Witness):
            return NotImplemented
        return bool(np.array_equal(self.w, other.w))

    def __hash__(self):
        return hash(self.flat())

    def __repr__(self):
        return f"Witness({self.flat()})"

    def to_json_dict(self) -> dict:
        return {
            "w": self.w.tolist(),
            "bounds": {str(d): format_fraction(v) for d, v in sorted(self.bounds.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict) -> "Witness":
        bounds = {int(k): parse_fraction(v) for k, v in d.get("bounds", {}).items()}
        return cls(d["w"], bounds)


def witness_S() -> Witness:
    """The RAC witness: ``w[a0a1][y] = (-1)**a_y``; classical bound 2 for d=2."""
    w = [[(-1) ** ((a >> 1) if y == 0 else (a & 1)) for y in range(2)] for a in range(4)]
    return Witness(w)


def eval_witness(w: Witness, t: DataTable):
    """``sum w[a][y] * E[a][y]``; exact for exact tables, float otherwise."""
    if t.exact:
        vals = t.values()
        return sum((int(w.w[a, y]) * vals[a, y] for a in range(4) for y in range(2)), Fraction(0))
    return float(np.sum(w.w * t.to_array()))


# -- classical bound -------------------------------------------------------


class ClassicalBound(NamedTuple):
    value: Fraction
    strategy: DeterministicStrategy


def classical_bound(w: Witness, d: int, budget: int = DEFAULT_BUDGET) -> ClassicalBound:
    """Exact maximum of the witness over all deterministic d-message strategies.

    Shared randomness cannot beat this by convexity. Enumerates all
    ``d**4 * 4**d`` strategies in canonical order and returns the first
    maximiser.
    """
    if d < 1:
        raise ValueError("d must be a positive integer")
    total = d**4 * 4**d
    if total > budget:
        raise BudgetExceeded(f"{total} strategies exceed the budget of {budget}")
    decs = np.array(list(itertools.product((0, 1), repeat=2 * d)), dtype=np.int64)
    decs = decs.reshape(len(decs), d, 2)
    E_dec = 1 - decs                              # (K, d, 2)
    coeff = w.w
    best_val, best = None, None
    # per encode map: score of each decoder is sum_a w[a, y] * E_dec[k, enc[a], y]
    for enc in itertools.product(range(d), repeat=4):
        scores = np.zeros(len(decs), dtype=np.int64)
        for a, m in enumerate(enc):
            scores += E_dec[:, m, :] @ coeff[a]
        k = int(np.argmax(scores))
        if best_val is None or scores[k] > best_val:
            best_val = int(scores[k])
            best = DeterministicStrategy(d, tuple(enc), tuple(int(b) for b in decs[k].ravel()))
    w.bounds[d] = Fraction(best_val)
    return ClassicalBound(Fraction(best_val), best)


# -- see-saw ---------------------------------------------------------------


class SeesawResult(NamedTuple):
    value: float
    setup: QuantumSetup
    iterations: int


def _random_unit(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _seesaw_value(W, r, axes, const):
    total = 0.0
    for y in range(2):
        if const[y] is None:
            total += 0.5 * (W[:, y].sum() + W[:, y] @ (r @ axes[y]))
        elif const[y] == 0:
            total += W[:, y].sum()
    return float(total)


def _seesaw_run(W, rng, const, tol, max_iter):
    """Alternate closed-form updates with the measurement types held fixed."""
    axes = _random_unit(rng, 2)
    r = _random_unit(rng, 4)
    live = np.array([c is None for c in const], dtype=float)
    prev = -np.inf
    value = _seesaw_value(W, r, axes, const)
    it = 0
    for it in range(1, max_iter + 1):
        # preparations: r_a parallel to v_a = sum_y w[a, y] n_y
        v = (W * live) @ axes
        norms = np.linalg.norm(v, axis=1)
        mask = norms > 1e-15
        r[mask] = v[mask] / norms[mask, None]
        # axes: n_y parallel to u_y = sum_a w[a, y] r_a
        for y in range(2):
            if const[y] is None:
                u = W[:, y] @ r
                un = np.linalg.norm(u)
                if un > 1e-15:
                    axes[y] = u / un
        value = _seesaw_value(W, r, axes, const)
        if abs(value - prev) < tol:
            break
        prev = value
    return value, r, axes, it


def quantum_value_seesaw(w: Witness, restarts: int = 20, seed: int = 0,
                         tol: float = 1e-12, max_iter: int = 10_000,
                         allow_constant: bool = True) -> SeesawResult:
    """Lower bound on the qubit value of ``w`` by alternating optimisation.

    Preparations are pure states and measurements projective, which suffices
    because the witness is linear in each. Given the axes, each preparation is
    set parallel to ``sum_y w[a][y] n_y``; given the preparations, each axis is
    set parallel to ``sum_a w[a][y] r_a``. A zero vector keeps the previous
    direction. Projectors of rank 0 and 2 (fixed outcome) are extreme too, so
    every restart is run once per assignment of {axis, fixed 0, fixed 1} to
    the two settings. Restart ``i`` uses the generator seeded with
    ``[seed, i]``.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    W = w.w.astype(float)
    kinds = (None, 0, 1) if allow_constant else (None,)
    patterns = list(itertools.product(kinds, repeat=2))
    best = None
    for i in range(restarts):
        for const in patterns:
            rng = np.random.default_rng([seed, i])
            value, r, axes, it = _seesaw_run(W, rng, const, tol, max_iter)
            if best is None or value > best[0] + 1e-15:
                best = (value, r.copy(), axes.copy(), const, it)
    value, r, axes, const, it = best
    meas = [BinaryMeasurement.fixed(c) if c is not None else BinaryMeasurement(axes[y])
            for y, c in enumerate(const)]
    return SeesawResult(value, QuantumSetup(r, meas), it)


# -- symmetries ------------------------------------------------------------


@dataclass(frozen=True)
class ScenarioSymmetry:
    """Relabelling of preparations, settings and outputs.

    Acting on a table: flip the outputs of each setting ``y`` with
    ``flips[y]`` set (``E -> 1 - E``), then move cell ``(a, y)`` to
    ``(perm[a], y ^ swap_y)``. Witnesses transform so that
    ``eval(g.w, g.t) = eval(w, t) + offset(g, w)``.
    """

    perm: tuple[int, int, int, int] = (0, 1, 2, 3)
    swap_y: bool = False
    flips: tuple[bool, bool] = (False, False)

    def __post_init__(self):
        if sorted(self.perm) != [0, 1, 2, 3]:
            raise ValueError("perm must be a permutation of 0..3")

    def inverse(self) -> "ScenarioSymmetry":
        inv = [0] * 4
        for a, b in enumerate(self.perm):
            inv[b] = a
        s = int(self.swap_y)
        flips = [False, False]
        for y in range(2):
            flips[y ^ s] = self.flips[y]
        return ScenarioSymmetry(tuple(inv), self.swap_y, tuple(flips))

    def then(self, other: "ScenarioSymmetry") -> "ScenarioSymmetry":
        """The symmetry ``other . self`` (apply ``self`` first)."""
        perm = tuple(other.perm[self.perm[a]] for a in range(4))
        s = int(self.swap_y)
        flips = tuple(self.flips[y] != other.flips[y ^ s] for y in range(2))
        return ScenarioSymmetry(perm, self.swap_y != other.swap_y, flips)

    def offset(self, w: Witness) -> int:
        return -sum(int(w.w[:, y].sum()) for y in range(2) if self.flips[y])


def apply_symmetry(g: ScenarioSymmetry, t: DataTable) -> DataTable:
    vals = t.values()
    out = [[None, None] for _ in range(4)]
    s = int(g.swap_y)
    for a in range(4):
        for y in range(2):
            v = vals[a, y]
            out[g.perm[a]][y ^ s] = 1 - v if g.flips[y] else v
    return DataTable(out)


def apply_symmetry_witness(g: ScenarioSymmetry, w: Witness) -> Witness:
    out = np.zeros((4, 2), dtype=np.int64)
    s = int(g.swap_y)
    for a in range(4):
        for y in range(2):
            out[g.perm[a], y ^ s] = -w.w[a, y] if g.flips[y] else w.w[a, y]
    return Witness(out)


def symmetry_generators() -> list[ScenarioSymmetry]:
    return [
        ScenarioSymmetry(perm=(1, 0, 2, 3)),
        ScenarioSymmetry(perm=(1, 2, 3, 0)),
        ScenarioSymmetry(swap_y=True),
        ScenarioSymmetry(flips=(True, False)),
    ]


def all_symmetries() -> list[ScenarioSymmetry]:
    """The full group (order 192) generated by :func:`symmetry_generators`."""
    return [ScenarioSymmetry(tuple(p), bool(s), (bool(f0), bool(f1)))
            for p in itertools.permutations(range(4))
            for s in (0, 1) for f0 in (0, 1) for f1 in (0, 1)]


# -- facets ----------------------------------------------------------------


@dataclass(frozen=True)
class Facet:
    """Inequality ``sum w[a][y] E[a][y] <= offset`` of the classical polytope."""

    witness: Witness = field(compare=False)
    offset: Fraction
    coefficients: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coefficients", self.witness.flat())
        object.__setattr__(self, "offset", Fraction(self.offset))

    @property
    def is_box(self) -> bool:
        """True for the trivial ``0 <= E <= 1`` constraints."""
        return sum(1 for c in self.coefficients if c) == 1

    def transformed(self, g: ScenarioSymmetry) -> "Facet":
        return Facet(apply_symmetry_witness(g, self.witness), self.offset + g.offset(self.witness))

    def to_json_dict(self) -> dict:
        d = self.witness.to_json_dict()
        d["offset"] = format_fraction(self.offset)
        return d


def classical_vertices(d: int = 2) -> list[tuple[int, ...]]:
    """Distinct deterministic tables, flattened in CSV order."""
    return distinct_deterministic_tables(d)


def enumerate_facets(d: int = 2) -> list[Facet]:
    """Exact facets of the convex hull of the deterministic d=2 tables."""
    if d != 2:
        raise ValueError("facet enumeration is implemented for d = 2 only")
    out = []
    for ineq in polytope.facets(classical_vertices(d)):
        wit = Witness(ineq.w, {d: Fraction(ineq.c)})
        out.append(Facet(wit, Fraction(ineq.c)))
    return out


def facet_orbits(facets: list[Facet], group=None) -> list[list[Facet]]:
    """Partition facets into orbits under the symmetry group."""
    group = group or all_symmetries()
    seen: set = set()
    orbits = []
    for f in facets:
        key = (f.coefficients, f.offset)
        if key in seen:
            continue
        orbit = {}
        for g in group:
            h = f.transformed(g)
            orbit[(h.coefficients, h.offset)] = h
        seen.update(orbit)
        orbits.append(sorted(orbit.values(), key=lambda x: (x.offset, x.coefficients)))
    return orbits


def in_orbit(target: Facet, facets: list[Facet], group=None) -> bool:
    """Whether some symmetry image of ``target`` is among ``facets``."""
    keys = {(f.coefficients, f.offset) for f in facets}
    for g in group or all_symmetries():
        h = target.transformed(g)
        if (h.coefficients, h.offset) in keys:
            return True
    return False

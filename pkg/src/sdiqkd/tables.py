"""Data tables and classical strategies for the N=4, m=2, k=2 scenario.

A data table holds the eight numbers ``E[a][y] = P(b=0 | a, y)`` where the
preparation label ``a = 2*a0 + a1`` runs over ``00, 01, 10, 11``. Tables built
from deterministic strategies (or rational mixtures of them) are stored with
exact ``Fraction`` entries; quantum tables are floats.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterator, Sequence

import numpy as np

from .qubit import BinaryMeasurement, as_bloch, born_zero_prob

ATOL = 1e-12
LABELS = ("00", "01", "10", "11")
CSV_HEADER = tuple(f"E{lab}_{y}" for lab in LABELS for y in (0, 1))


def split_label(a: int) -> tuple[int, int]:
    """Return the bits ``(a0, a1)`` of preparation index ``a``."""
    return a >> 1, a & 1


def _index(a) -> int:
    if isinstance(a, str):
        return LABELS.index(a)
    if not 0 <= a < 4:
        raise IndexError(f"preparation index {a} out of range")
    return int(a)


def _is_exact(x) -> bool:
    return isinstance(x, (Rational, int, np.integer)) and not isinstance(x, bool)


class DataTable:
    """The eight correlators ``E[a][y]``.

    Entries are either all exact rationals or all floats. Indexing accepts
    ``table[a, y]`` with ``a`` an int in 0..3 or a two-character label.
    """

    __slots__ = ("_E", "exact")

    def __init__(self, values):
        flat = [v for row in values for v in row]
        if len(values) != 4 or any(len(row) != 2 for row in values):
            raise ValueError("data table must be 4 x 2")
        self.exact = all(_is_exact(v) for v in flat)
        if self.exact:
            E = np.empty((4, 2), dtype=object)
            for a in range(4):
                for y in range(2):
                    E[a, y] = Fraction(values[a][y])
            lo, hi = min(flat), max(flat)
            if lo < 0 or hi > 1:
                raise ValueError("table entries must lie in [0, 1]")
        else:
            E = np.array(values, dtype=float)
            if E.min() < -ATOL or E.max() > 1 + ATOL:
                raise ValueError("table entries must lie in [0, 1]")
        self._E = E

    def __getitem__(self, key):
        a, y = key
        return self._E[_index(a), y]

    def to_array(self) -> np.ndarray:
        """Float copy of shape (4, 2)."""
        return self._E.astype(float)

    def values(self) -> np.ndarray:
        """Raw entries (object array of Fractions for exact tables)."""
        return self._E.copy()

    def cells(self) -> dict:
        return {name: self._E[i // 2, i % 2] for i, name in enumerate(CSV_HEADER)}

    def __eq__(self, other):
        if not isinstance(other, DataTable):
            return NotImplemented
        return bool(np.all(self._E == other._E))

    def __repr__(self):
        body = ", ".join(f"{k}={v}" for k, v in self.cells().items())
        return f"DataTable({body})"

    # -- serialisation --------------------------------------------------

    def to_json_dict(self) -> dict:
        return {k: float(v) for k, v in self.cells().items()}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict) -> "DataTable":
        flat = [d[k] for k in CSV_HEADER]
        return cls([flat[2 * a: 2 * a + 2] for a in range(4)])

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if header:
            writer.writerow(CSV_HEADER)
        writer.writerow([repr(float(v)) for v in self.cells().values()])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "DataTable":
        rows = list(csv.DictReader(io.StringIO(text)))
        if len(rows) != 1:
            raise ValueError("expected exactly one data row")
        return cls.from_json_dict({k: float(v) for k, v in rows[0].items()})


def constant_table(value) -> DataTable:
    return DataTable([[value, value] for _ in range(4)])


@dataclass(frozen=True)
class DeterministicStrategy:
    """Classical strategy sending one of ``d`` messages.

    ``encode[a]`` is the message for preparation ``a``; ``decode[2*m + y]``
    is Bob's output on message ``m`` and setting ``y``.
    """

    d: int
    encode: tuple[int, ...]
    decode: tuple[int, ...]

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("alphabet size must be positive")
        if len(self.encode) != 4 or any(not 0 <= m < self.d for m in self.encode):
            raise ValueError("encode must map the 4 preparations into range(d)")
        if len(self.decode) != 2 * self.d or any(b not in (0, 1) for b in self.decode):
            raise ValueError("decode must be a bit for each (message, y)")

    @classmethod
    def from_functions(cls, d: int, encode, decode) -> "DeterministicStrategy":
        """Build from callables ``encode(a0, a1)`` and ``decode(m, y)``."""
        enc = tuple(int(encode(*split_label(a))) for a in range(4))
        dec = tuple(int(decode(m, y)) for m in range(d) for y in range(2))
        return cls(d, enc, dec)

    def output(self, a: int, y: int) -> int:
        return self.decode[2 * self.encode[a] + y]


@dataclass(frozen=True)
class SharedRandomnessStrategy:
    """Convex mixture of deterministic strategies over a shared variable."""

    components: tuple[tuple[object, DeterministicStrategy], ...]

    def __post_init__(self):
        comps = tuple((w, s) for w, s in self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("mixture needs at least one component")
        weights = [w for w, _ in comps]
        if any(w < 0 for w in weights):
            raise ValueError("mixture weights must be non-negative")
        total = sum(weights)
        if all(_is_exact(w) for w in weights):
            if total != 1:
                raise ValueError(f"mixture weights sum to {total}, not 1")
        elif abs(total - 1) > ATOL:
            raise ValueError(f"mixture weights sum to {total}, not 1")
        if len({s.d for _, s in comps}) != 1:
            raise ValueError("all strategies in a mixture must share d")

    @property
    def d(self) -> int:
        return self.components[0][1].d


def enumerate_strategies(d: int) -> Iterator[DeterministicStrategy]:
    """All ``d**4 * 2**(2d)`` deterministic strategies in canonical order.

    Encode maps run as base-``d`` digit strings over ``a = 0..3`` (outer
    loop), decode maps as base-2 digit strings over ``(m, y)`` in the order
    ``(0,0), (0,1), (1,0), ...``; the first digit is the most significant.
    """
    for enc in itertools.product(range(d), repeat=4):
        for dec in itertools.product((0, 1), repeat=2 * d):
            yield DeterministicStrategy(d, enc, dec)


class QuantumSetup:
    """Four qubit preparations (indexed by ``a = 2*a0 + a1``) and Bob's two
    binary measurements (indexed by ``y``)."""

    def __init__(self, preparations, measurements):
        preps = tuple(as_bloch(r) for r in preparations)
        meas = tuple(m if isinstance(m, BinaryMeasurement) else BinaryMeasurement(m)
                     for m in measurements)
        if len(preps) != 4 or len(meas) != 2:
            raise ValueError("setup needs 4 preparations and 2 measurements")
        self.preparations = preps
        self.measurements = meas

    @property
    def axes(self) -> np.ndarray:
        return np.array([m.axis for m in self.measurements])

    def to_json_dict(self) -> dict:
        axes = [{"constant": m.constant} if m.is_constant else m.axis.tolist()
                for m in self.measurements]
        return {"preparations": [r.tolist() for r in self.preparations], "axes": axes}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict) -> "QuantumSetup":
        meas = []
        for ax in d["axes"]:
            if isinstance(ax, dict):
                meas.append(BinaryMeasurement.fixed(int(ax["constant"])))
            else:
                # tolerate axes written with limited precision
                meas.append(BinaryMeasurement.along(ax))
        return cls(d["preparations"], meas)

    def __repr__(self):
        preps = [r.round(6).tolist() for r in self.preparations]
        return f"QuantumSetup(preparations={preps}, measurements={list(self.measurements)})"


def quantum_table(setup: QuantumSetup) -> DataTable:
    """``E[a][y] = P(b=0)`` for preparation ``a`` measured with ``M_y``."""
    preps, meas = setup.preparations, setup.measurements
    return DataTable([[born_zero_prob(preps[a], meas[y]) for y in range(2)] for a in range(4)])


def deterministic_table(s: DeterministicStrategy) -> DataTable:
    return DataTable([[1 - s.output(a, y) for y in range(2)] for a in range(4)])


def mixture_table(s: SharedRandomnessStrategy) -> DataTable:
    """Convex combination of the components' deterministic tables."""
    exact = all(_is_exact(w) for w, _ in s.components)
    zero = Fraction(0) if exact else 0.0
    acc = [[zero, zero] for _ in range(4)]
    for w, strat in s.components:
        w = Fraction(w) if exact else float(w)
        for a in range(4):
            for y in range(2):
                acc[a][y] += w * (1 - strat.output(a, y))
    if not exact:
        acc = [[min(1.0, max(0.0, v)) for v in row] for row in acc]
    return DataTable(acc)


def table_distance(t1: DataTable, t2: DataTable):
    """Max-norm distance over the eight cells (exact when both tables are)."""
    if t1.exact and t2.exact:
        return max(abs(x - y) for x, y in zip(t1.values().ravel(), t2.values().ravel()))
    return float(np.max(np.abs(t1.to_array() - t2.to_array())))


def deterministic_tables_array(d: int) -> np.ndarray:
    """Integer array of shape ``(d**4 * 4**d, 4, 2)`` with every deterministic
    table, in :func:`enumerate_strategies` order."""
    encs = np.array(list(itertools.product(range(d), repeat=4)), dtype=np.int64)
    decs = np.array(list(itertools.product((0, 1), repeat=2 * d)), dtype=np.int64)
    decs = decs.reshape(len(decs), d, 2)
    # out[e, k, a, y] = decs[k, encs[e, a], y]
    outputs = decs[:, encs, :].transpose(1, 0, 2, 3)
    return (1 - outputs).reshape(-1, 4, 2)


def distinct_deterministic_tables(d: int) -> list[tuple[int, ...]]:
    """Sorted distinct 0/1 tables (flattened in CSV order) at alphabet size d."""
    arr = deterministic_tables_array(d).reshape(-1, 8)
    return sorted({tuple(int(v) for v in row) for row in arr})


def random_mixture(rng: np.random.Generator, d: int, k: int, exact: bool = True,
                   denominator: int = 1000) -> SharedRandomnessStrategy:
    """Random mixture of ``k`` deterministic strategies (test helper)."""
    comps = []
    raw = rng.integers(1, denominator, size=k)
    for w in raw:
        enc = tuple(int(v) for v in rng.integers(0, d, size=4))
        dec = tuple(int(v) for v in rng.integers(0, 2, size=2 * d))
        comps.append((int(w), DeterministicStrategy(d, enc, dec)))
    total = int(raw.sum())
    if exact:
        return SharedRandomnessStrategy(tuple((Fraction(w, total), s) for w, s in comps))
    return SharedRandomnessStrategy(tuple((w / total, s) for w, s in comps))


def as_table(values: Sequence) -> DataTable:
    """Build a table from a flat 8-sequence in CSV order."""
    values = list(values)
    if len(values) != 8:
        raise ValueError("need 8 values")
    return DataTable([values[2 * a: 2 * a + 2] for a in range(4)])

"""Seeded Monte Carlo of the one-way protocol with intercept-resend attacks.

Every round consumes exactly one Philox counter block (four uniforms: inputs,
Eve's outcome, Bob's outcome, test-round selection), so round ``i`` sees the
same randomness however the run is chunked.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .qubit import unit
from .rac import rac_success
from .tables import CSV_HEADER, DataTable, QuantumSetup, quantum_table

DEFAULT_CHUNK = 1 << 18


@dataclass(frozen=True, eq=False)
class AttackModel:
    """Eavesdropper description.

    ``decision[o][y]`` is Eve's guess after seeing her outcome ``o`` and the
    announced setting ``y``. By default she targets the announced bit
    ``a_y``; ``fixed_bit`` makes her always target ``a_0`` or ``a_1``.
    """

    kind: str = "none"
    axis: Optional[np.ndarray] = None
    decision: Optional[np.ndarray] = None
    fixed_bit: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("none", "intercept_resend"):
            raise ValueError(f"unknown attack kind {self.kind!r}")
        if self.kind == "intercept_resend":
            axis = np.asarray(self.axis, dtype=float)
            if axis.shape != (3,) or abs(np.linalg.norm(axis) - 1) > 1e-12:
                raise ValueError("attack axis must be a unit 3-vector")
            dec = np.asarray(self.decision, dtype=np.int64)
            if dec.shape != (2, 2) or not np.isin(dec, (0, 1)).all():
                raise ValueError("decision table must be 2 x 2 bits")
            object.__setattr__(self, "axis", axis)
            object.__setattr__(self, "decision", dec)
        if self.fixed_bit not in (None, 0, 1):
            raise ValueError("fixed_bit must be None, 0 or 1")

    @property
    def active(self) -> bool:
        return self.kind != "none"

    @classmethod
    def none(cls) -> "AttackModel":
        return cls()

    @classmethod
    def intercept_resend(cls, setup: QuantumSetup, axis, fixed_bit: Optional[int] = None) -> "AttackModel":
        """Projective attack along ``axis`` with the MAP decision table for ``setup``."""
        axis = unit(axis)
        return cls("intercept_resend", axis, map_decision(setup, axis, fixed_bit), fixed_bit)

    def to_json_dict(self) -> dict:
        if not self.active:
            return {"attack": {"kind": "none"}}
        d = {"kind": self.kind, "axis": self.axis.tolist(), "decision": self.decision.tolist()}
        if self.fixed_bit is not None:
            d["fixed_bit"] = self.fixed_bit
        return {"attack": d}

    @classmethod
    def from_json_dict(cls, d: dict, setup: QuantumSetup) -> "AttackModel":
        spec = d.get("attack", d)
        if spec.get("kind", "none") == "none":
            return cls()
        return cls.intercept_resend(setup, spec["axis"], spec.get("fixed_bit"))


def _eve_outcome_probs(setup: QuantumSetup, axis) -> np.ndarray:
    """``P(o | a)`` with shape (4, 2)."""
    preps = np.array(setup.preparations)
    p0 = np.clip(0.5 * (1 + preps @ axis), 0.0, 1.0)
    return np.stack([p0, 1 - p0], axis=1)


def _target_bits(fixed_bit):
    """``bits[a, y]``: the bit of preparation ``a`` Eve is scored on at setting ``y``."""
    a = np.arange(4)
    bits = np.stack([a >> 1, a & 1], axis=1)
    if fixed_bit is not None:
        bits = np.repeat(bits[:, [fixed_bit]], 2, axis=1)
    return bits


def map_decision(setup: QuantumSetup, axis, fixed_bit: Optional[int] = None) -> np.ndarray:
    """Maximum a-posteriori guess ``decision[o][y]`` over uniform preparations.

    Ties go to guess 0.
    """
    probs = _eve_outcome_probs(setup, np.asarray(axis, dtype=float))
    bits = _target_bits(fixed_bit)
    dec = np.zeros((2, 2), dtype=np.int64)
    for o in range(2):
        for y in range(2):
            w0 = probs[bits[:, y] == 0, o].sum()
            w1 = probs[bits[:, y] == 1, o].sum()
            dec[o, y] = int(w1 > w0)
    return dec


def analytic_eve_success(setup: QuantumSetup, attack: AttackModel) -> float:
    """Eve's exact average success with her decision table, averaged over y."""
    probs = _eve_outcome_probs(setup, attack.axis)
    bits = _target_bits(attack.fixed_bit)
    total = 0.0
    for a in range(4):
        for y in range(2):
            for o in range(2):
                total += probs[a, o] * (attack.decision[o, y] == bits[a, y])
    return float(total / 8)


def attacked_setup(setup: QuantumSetup, attack: AttackModel) -> QuantumSetup:
    """Preparations as Bob receives them: ``r -> (r . e) e`` under attack."""
    if not attack.active:
        return setup
    e = attack.axis
    preps = [float(r @ e) * e for r in setup.preparations]
    return QuantumSetup(preps, setup.measurements)


def analytic_attacked_table(setup: QuantumSetup, attack: AttackModel) -> DataTable:
    return quantum_table(attacked_setup(setup, attack))


@dataclass
class SimulationResult:
    rounds: int
    seed: int
    counts: np.ndarray                      # counts[b, a, y]
    estimated_table: Optional[DataTable]
    p_bob_hat: Optional[float]
    p_eve_hat: Optional[float]
    standard_error: Optional[np.ndarray]    # per cell, shape (4, 2)
    test_rounds: int = 0
    test_error_rate: Optional[float] = None
    attack: dict = field(default_factory=lambda: {"kind": "none"})

    def cell_counts(self) -> np.ndarray:
        """Rounds per ``(a, y)`` cell."""
        return self.counts.sum(axis=0)

    def p_bob_standard_error(self) -> Optional[float]:
        if not self.rounds:
            return None
        p = self.p_bob_hat
        return float(np.sqrt(p * (1 - p) / self.rounds))

    def __eq__(self, other):
        if not isinstance(other, SimulationResult):
            return NotImplemented
        return self.to_json_dict() == other.to_json_dict()

    def to_json_dict(self) -> dict:
        # 8 x 2: cells in CSV order, columns b = 0, 1
        counts = [[int(self.counts[b, i // 2, i % 2]) for b in range(2)] for i in range(8)]
        return {
            "rounds": self.rounds,
            "seed": self.seed,
            "counts": counts,
            "estimated_table": self.estimated_table.to_json_dict() if self.estimated_table else None,
            "p_bob_hat": self.p_bob_hat,
            "p_eve_hat": self.p_eve_hat,
            "p_bob_standard_error": self.p_bob_standard_error(),
            "standard_error": None if self.standard_error is None
            else self.standard_error.ravel().tolist(),
            "test_rounds": self.test_rounds,
            "test_error_rate": self.test_error_rate,
            "attack": self.attack,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    def summary_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        head = ["rounds", "seed", "p_bob_hat", "p_eve_hat", "test_error_rate"] + list(CSV_HEADER)
        writer.writerow(head)
        cells = ([""] * 8 if self.estimated_table is None
                 else [repr(float(v)) for v in self.estimated_table.cells().values()])
        writer.writerow([self.rounds, self.seed, self.p_bob_hat, self.p_eve_hat,
                         self.test_error_rate] + cells)
        return buf.getvalue()


def _uniforms(seed: int, start: int, n: int) -> np.ndarray:
    bitgen = np.random.Philox(key=seed)
    bitgen.advance(start)
    return np.random.Generator(bitgen).random((n, 4))


def _simulate_chunk(u, preps, meas, attack, target_bits):
    x = np.floor(u[:, 0] * 8).astype(np.int64)
    a, y = x >> 1, x & 1
    r = preps[a]
    eve_ok = None
    if attack.active:
        e = attack.axis
        p0 = 0.5 * (1 + r @ e)
        o = (u[:, 1] >= p0).astype(np.int64)
        r = np.where(o[:, None] == 0, e, -e)
        eve_ok = attack.decision[o, y] == target_bits[a, y]
    b = np.empty(len(x), dtype=np.int64)
    for yy, m in enumerate(meas):
        sel = y == yy
        if m.is_constant:
            b[sel] = m.constant
        else:
            p0 = 0.5 * (1 + r[sel] @ m.axis)
            b[sel] = (u[sel, 2] >= p0).astype(np.int64)
    return a, y, b, eve_ok


def run_protocol(setup: QuantumSetup, rounds: int, seed: int = 0,
                 attack: Optional[AttackModel] = None, test_fraction: float = 0.1,
                 chunk_size: int = DEFAULT_CHUNK) -> SimulationResult:
    """Simulate ``rounds`` rounds and tally ``counts[b, a, y]``.

    Per round: uniform ``(a0, a1, y)``; Eve (if active) measures along her
    axis and resends the eigenstate she found; Bob measures ``M_y``. Alice's
    key bit is ``a_y`` and Bob's is ``b``. A ``test_fraction`` of rounds is
    flagged for error estimation. Output depends only on
    ``(setup, rounds, seed, attack, test_fraction)``, not on ``chunk_size``.
    """
    if rounds < 0:
        raise ValueError("rounds must be non-negative")
    if not 0 <= test_fraction <= 1:
        raise ValueError("test_fraction must be in [0, 1]")
    attack = attack or AttackModel.none()
    preps = np.array(setup.preparations)
    bits_bob = _target_bits(None)
    bits_eve = _target_bits(attack.fixed_bit)
    counts = np.zeros((2, 4, 2), dtype=np.int64)
    bob_ok = eve_ok_total = test_n = test_err = 0
    for start in range(0, rounds, chunk_size):
        n = min(chunk_size, rounds - start)
        u = _uniforms(seed, start, n)
        a, y, b, eve_ok = _simulate_chunk(u, preps, setup.measurements, attack, bits_eve)
        counts += np.bincount(b * 8 + a * 2 + y, minlength=16).reshape(2, 4, 2)
        ok = b == bits_bob[a, y]
        bob_ok += int(ok.sum())
        if eve_ok is not None:
            eve_ok_total += int(eve_ok.sum())
        test = u[:, 3] < test_fraction
        test_n += int(test.sum())
        test_err += int((~ok & test).sum())

    attack_info = attack.to_json_dict()["attack"]
    if rounds == 0:
        return SimulationResult(0, seed, counts, None, None, None, None, 0, None, attack_info)
    per_cell = counts.sum(axis=0)
    table = se = None
    if per_cell.min() > 0:
        est = counts[0] / per_cell
        table = DataTable(est.tolist())
        se = np.sqrt(est * (1 - est) / per_cell)
    return SimulationResult(
        rounds=rounds,
        seed=seed,
        counts=counts,
        estimated_table=table,
        p_bob_hat=bob_ok / rounds,
        p_eve_hat=eve_ok_total / rounds if attack.active else None,
        standard_error=se,
        test_rounds=test_n,
        test_error_rate=test_err / test_n if test_n else None,
        attack=attack_info,
    )


# -- Bob/Eve trade-off -----------------------------------------------------


@dataclass
class ScanPoint:
    axis: np.ndarray
    p_bob: float
    p_eve: float

    @property
    def total(self) -> float:
        return self.p_bob + self.p_eve


@dataclass
class ScanResult:
    points: list
    max_total: float
    best: ScanPoint

    def to_json_dict(self) -> dict:
        return {
            "max_p_bob_plus_p_eve": self.max_total,
            "best": {"axis": self.best.axis.tolist(), "p_bob": self.best.p_bob,
                     "p_eve": self.best.p_eve},
            "points": [{"axis": p.axis.tolist(), "p_bob": p.p_bob, "p_eve": p.p_eve}
                       for p in self.points],
        }


def great_circle_axes(n: int) -> np.ndarray:
    """``n`` equally spaced unit vectors in the x-z plane, starting at +z."""
    theta = 2 * np.pi * np.arange(n) / n
    return np.stack([np.sin(theta), np.zeros(n), np.cos(theta)], axis=1)


def sphere_axes(n: int) -> np.ndarray:
    """Fibonacci lattice of ``n`` near-uniform points on the unit sphere."""
    i = np.arange(n) + 0.5
    z = 1 - 2 * i / n
    phi = np.pi * (1 + 5**0.5) * i
    rho = np.sqrt(1 - z**2)
    return np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=1)


def attack_point(setup: QuantumSetup, axis, fixed_bit: Optional[int] = None) -> ScanPoint:
    """Analytic ``(P_B, P_E)`` for an intercept-resend attack along ``axis``."""
    attack = AttackModel.intercept_resend(setup, axis, fixed_bit)
    p_bob = float(rac_success(analytic_attacked_table(setup, attack)))
    return ScanPoint(attack.axis, p_bob, float(analytic_eve_success(setup, attack)))


def scan_eve_attacks(setup: QuantumSetup, grid_resolution: int = 3600,
                     sphere: bool = False, fixed_bit: Optional[int] = None) -> ScanResult:
    """Evaluate every grid axis and report the largest ``P_B + P_E``.

    The x-z great circle is enough for setups lying in that plane; pass
    ``sphere=True`` for a Fibonacci grid over the full sphere.
    """
    if grid_resolution < 1:
        raise ValueError("grid_resolution must be >= 1")
    axes = sphere_axes(grid_resolution) if sphere else great_circle_axes(grid_resolution)
    points = [attack_point(setup, ax, fixed_bit) for ax in axes]
    best = max(points, key=lambda p: p.total)
    return ScanResult(points, best.total, best)

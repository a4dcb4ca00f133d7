"""The 2-to-1 random access code behind the witness S.

Bob is asked for bit ``a_y`` of Alice's pair; his success probability is an
affine function of S, ``P_B = (S + 4) / 8``.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .qubit import BinaryMeasurement
from .tables import (
    DataTable,
    DeterministicStrategy,
    QuantumSetup,
    SharedRandomnessStrategy,
    split_label,
)
from .witness import eval_witness, witness_S

__all__ = [
    "QuantumSetup",
    "rac_success",
    "rac_success_direct",
    "bb84_setup",
    "bb84_classical_strategy",
    "optimal_setup",
    "mixed_setup",
    "BUILTIN_SETUPS",
]

X = np.array([1.0, 0.0, 0.0])
Z = np.array([0.0, 0.0, 1.0])


def rac_success(t: DataTable):
    """``P_B = (S + 4) / 8`` from the witness value of the table."""
    s = eval_witness(witness_S(), t)
    return (s + 4) / 8


def rac_success_direct(t: DataTable):
    """``P_B`` as the average over ``(a0, a1, y)`` of ``P(b = a_y)``."""
    vals = t.values()
    total = Fraction(0) if t.exact else 0.0
    for a in range(4):
        bits = split_label(a)
        for y in range(2):
            p0 = vals[a, y] if t.exact else float(vals[a, y])
            total += p0 if bits[y] == 0 else 1 - p0
    return total / 8


def bb84_setup() -> QuantumSetup:
    """BB84 states (00: |0>, 11: |1>, 10: |+>, 01: |->) measured in Z then X."""
    return QuantumSetup([Z, -X, X, -Z], [BinaryMeasurement(Z), BinaryMeasurement(X)])


def optimal_setup() -> QuantumSetup:
    """BB84 states with Bob measuring along the diagonals of the x-z plane.

    With outcome 0 on the +1 eigenspace, S = 2*sqrt(2) needs ``n_0`` along
    ``z - x`` and ``n_1`` along ``z + x``. The opposite assignment
    (``n_0`` along ``z + x``) gives S = 0 with these states, under either
    outcome convention; it reaches 2*sqrt(2) only if the ``|+>`` and ``|->``
    preparations trade labels.
    """
    preps = bb84_setup().preparations
    return QuantumSetup(preps, [BinaryMeasurement.along(Z - X), BinaryMeasurement.along(Z + X)])


def mixed_setup() -> QuantumSetup:
    """All four preparations maximally mixed; every cell is 1/2."""
    return QuantumSetup([np.zeros(3)] * 4, [BinaryMeasurement(Z), BinaryMeasurement(X)])


def bb84_classical_strategy() -> SharedRandomnessStrategy:
    """One shared unbiased bit reproduces the BB84 table with one classical bit.

    lambda = 0: send ``a0``, Bob outputs ``m xor y``.
    lambda = 1: send ``a1``, Bob outputs ``m``.
    """
    branch0 = DeterministicStrategy.from_functions(2, lambda a0, a1: a0, lambda m, y: m ^ y)
    branch1 = DeterministicStrategy.from_functions(2, lambda a0, a1: a1, lambda m, y: m)
    half = Fraction(1, 2)
    return SharedRandomnessStrategy(((half, branch0), (half, branch1)))


BUILTIN_SETUPS = {
    "bb84": bb84_setup,
    "optimal": optimal_setup,
    "mixed": mixed_setup,
}

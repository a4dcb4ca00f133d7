"""Minimal qubit algebra in the Bloch picture.

States are Bloch vectors ``r`` with ``rho = (I + r . sigma) / 2``. A binary
measurement is given by a unit axis ``n``; outcome ``b = 0`` is the projector
onto the +1 eigenspace of ``n . sigma``. The matrix form is only used for
cross-checks.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

ATOL = 1e-12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


class UnphysicalError(ValueError):
    """Raised for Bloch vectors outside the unit ball or non-unit axes."""


def as_bloch(r) -> np.ndarray:
    """Validate and return a Bloch vector as a float array of shape (3,)."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise ValueError(f"Bloch vector must have 3 components, got shape {r.shape}")
    if np.linalg.norm(r) > 1 + ATOL:
        raise UnphysicalError(f"|r| = {np.linalg.norm(r):.15g} exceeds 1")
    return r


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValueError("cannot normalise the zero vector")
    return v / norm


@dataclass(frozen=True, eq=False)
class BinaryMeasurement:
    """Two-outcome projective measurement on a qubit.

    Normally defined by a unit ``axis``; outcome 0 projects onto the +1
    eigenspace of ``axis . sigma``. Setting ``constant`` to 0 or 1 gives the
    degenerate projective measurement whose outcome is fixed (effects I and
    0); the axis is then ignored.
    """

    axis: np.ndarray
    constant: Optional[int] = None

    def __post_init__(self):
        axis = np.asarray(self.axis, dtype=float)
        if axis.shape != (3,):
            raise ValueError("measurement axis must have 3 components")
        if self.constant is None:
            if abs(np.linalg.norm(axis) - 1) > ATOL:
                raise UnphysicalError(f"axis norm {np.linalg.norm(axis):.15g} != 1")
        elif self.constant not in (0, 1):
            raise ValueError("constant outcome must be 0 or 1")
        object.__setattr__(self, "axis", axis)

    @classmethod
    def along(cls, v) -> "BinaryMeasurement":
        """Measurement along the normalised direction of ``v``."""
        return cls(unit(v))

    @classmethod
    def fixed(cls, outcome: int) -> "BinaryMeasurement":
        return cls(np.zeros(3), constant=outcome)

    @property
    def is_constant(self) -> bool:
        return self.constant is not None

    def effects(self) -> tuple[np.ndarray, np.ndarray]:
        """Return the effect operators ``(Pi_0, Pi_1)``."""
        if self.constant is not None:
            zero = np.zeros((2, 2), dtype=complex)
            return (IDENTITY.copy(), zero) if self.constant == 0 else (zero, IDENTITY.copy())
        n_sigma = sum(c * p for c, p in zip(self.axis, PAULIS))
        return (IDENTITY + n_sigma) / 2, (IDENTITY - n_sigma) / 2

    def __eq__(self, other):
        if not isinstance(other, BinaryMeasurement):
            return NotImplemented
        if self.constant is not None or other.constant is not None:
            return self.constant == other.constant
        return bool(np.array_equal(self.axis, other.axis))

    def __repr__(self):
        if self.constant is not None:
            return f"BinaryMeasurement(constant={self.constant})"
        return f"BinaryMeasurement(axis={self.axis.tolist()})"


def bloch_to_density(r) -> np.ndarray:
    """Density matrix ``(I + x X + y Y + z Z) / 2`` of a Bloch vector."""
    x, y, z = as_bloch(r)
    return 0.5 * (IDENTITY + x * PAULI_X + y * PAULI_Y + z * PAULI_Z)


def check_density(rho, atol: float = ATOL) -> np.ndarray:
    """Raise if ``rho`` is not a valid 2x2 density matrix; return it as an array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError("density matrix must be 2x2")
    if not np.allclose(rho, rho.conj().T, atol=atol, rtol=0):
        raise UnphysicalError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > atol:
        raise UnphysicalError(f"trace {np.trace(rho).real:.15g} != 1")
    if np.linalg.eigvalsh(rho).min() < -atol:
        raise UnphysicalError("density matrix has a negative eigenvalue")
    return rho


def density_to_bloch(rho) -> np.ndarray:
    """Inverse of :func:`bloch_to_density`: ``r_i = tr(rho sigma_i)``."""
    rho = check_density(rho)
    return np.array([np.trace(rho @ p).real for p in PAULIS])


def born_zero_prob(state, meas: BinaryMeasurement) -> float:
    """Probability of outcome 0, ``(1 + r . n) / 2``."""
    r = as_bloch(state)
    if meas.constant is not None:
        return 1.0 if meas.constant == 0 else 0.0
    p = 0.5 * (1.0 + float(r @ meas.axis))
    return min(1.0, max(0.0, p))


def born_one_prob(state, meas: BinaryMeasurement) -> float:
    return 1.0 - born_zero_prob(state, meas)


def born_zero_prob_matrix(state, meas: BinaryMeasurement) -> float:
    """Same as :func:`born_zero_prob` but via ``tr(rho Pi_0)``."""
    rho = bloch_to_density(state)
    return float(np.trace(rho @ meas.effects()[0]).real)


def project_after_measurement(state, meas: BinaryMeasurement, outcome: int) -> np.ndarray:
    """Post-measurement state: ``+axis`` for outcome 0, ``-axis`` for outcome 1."""
    as_bloch(state)
    if outcome not in (0, 1):
        raise ValueError("outcome must be 0 or 1")
    if meas.constant is not None:
        # trivial measurement leaves the state untouched
        return np.asarray(state, dtype=float).copy()
    return meas.axis.copy() if outcome == 0 else -meas.axis

"""Vectors and operators on a finite-dimensional complex Hilbert space."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np
import scipy.linalg

from ..errors import DimensionMismatch, ZeroVector
from .tolerances import DEFAULT_TOLERANCES, Tolerances


class OperatorKind(str, Enum):
    """What an operator is promised to be."""
    GENERAL = "general"
    UNITARY = "unitary"
    PROJECTOR = "projector"


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=complex)
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class StateVector:
    """A vector of complex amplitudes."""
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amplitudes.size == 0:
            raise DimensionMismatch("state vectors need dim >= 1")
        if not np.all(np.isfinite(amplitudes)):
            raise ValueError("amplitudes must be finite")
        object.__setattr__(self, "amplitudes", _frozen(amplitudes))

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        norm = self.norm()
        if norm == 0.0:
            raise ZeroVector("cannot normalize the zero vector")
        return StateVector(self.amplitudes / norm)

    @classmethod
    def basis(cls, dim: int, index: int) -> "StateVector":
        amplitudes = np.zeros(dim, dtype=complex)
        amplitudes[index] = 1.0
        return cls(amplitudes)


VectorLike = Union[StateVector, np.ndarray, Sequence[complex]]


def as_array(vector: VectorLike) -> np.ndarray:
    """Plain complex array view of anything vector-like."""
    if isinstance(vector, StateVector):
        return vector.amplitudes
    return np.asarray(vector, dtype=complex).reshape(-1)


@dataclass(frozen=True)
class Operator:
    """A dim_out x dim_in complex matrix tagged with what it promises to be."""
    entries: np.ndarray
    kind: OperatorKind = OperatorKind.GENERAL

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.ndim != 2 or 0 in entries.shape:
            raise DimensionMismatch("operator entries must be a non-empty matrix", {"shape": list(entries.shape)})
        object.__setattr__(self, "entries", _frozen(entries))
        object.__setattr__(self, "kind", OperatorKind(self.kind))

    @property
    def dim_in(self) -> int:
        return self.entries.shape[1]

    @property
    def dim_out(self) -> int:
        return self.entries.shape[0]

    def apply(self, vector: VectorLike) -> np.ndarray:
        array = as_array(vector)
        if array.shape[0] != self.dim_in:
            raise DimensionMismatch(
                f"operator expects dim {self.dim_in}, got {array.shape[0]}",
            )
        return self.entries @ array

    @classmethod
    def unitary(cls, entries, tol: Tolerances = DEFAULT_TOLERANCES) -> "Operator":
        """Build an isometry, checking U^dagger U = 1 within tol.exact."""
        op = cls(entries, OperatorKind.UNITARY)
        defect = isometry_defect(op.entries)
        if defect > tol.exact:
            raise ValueError(f"matrix is not unitary (defect {defect:.3e})")
        return op

    @classmethod
    def projector(cls, entries, tol: Tolerances = DEFAULT_TOLERANCES) -> "Operator":
        """Build an orthogonal projector, checking Hermiticity and idempotence."""
        op = cls(entries, OperatorKind.PROJECTOR)
        matrix = op.entries
        if matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatch("projectors must be square")
        if op_norm(matrix - matrix.conj().T) > tol.exact or op_norm(matrix @ matrix - matrix) > tol.exact:
            raise ValueError("matrix is not an orthogonal projector")
        return op

    @classmethod
    def identity(cls, dim: int) -> "Operator":
        return cls(np.eye(dim, dtype=complex), OperatorKind.UNITARY)


def op_norm(matrix: np.ndarray) -> float:
    """Largest singular value; zero for empty matrices."""
    if matrix.size == 0:
        return 0.0
    return float(np.linalg.norm(matrix, 2))


def isometry_defect(matrix: np.ndarray) -> float:
    """Operator norm of U^dagger U - 1."""
    return op_norm(matrix.conj().T @ matrix - np.eye(matrix.shape[1]))


def op_norm_distance(u: Union[Operator, np.ndarray], v: Union[Operator, np.ndarray]) -> float:
    """Operator-norm distance between two equally shaped operators."""
    a = u.entries if isinstance(u, Operator) else np.asarray(u, dtype=complex)
    b = v.entries if isinstance(v, Operator) else np.asarray(v, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatch("operators have different shapes", {"left": list(a.shape), "right": list(b.shape)})
    return op_norm(a - b)


def inner(psi: VectorLike, phi: VectorLike) -> complex:
    """Inner product <psi, phi>, antilinear in the first slot."""
    a, b = as_array(psi), as_array(phi)
    if a.shape != b.shape:
        raise DimensionMismatch("vectors have different dimensions")
    return complex(np.vdot(a, b))


def random_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-random unit vector."""
    vector = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return vector / np.linalg.norm(vector)


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-random unitary via QR with phase correction."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def perturbation(rng: np.random.Generator, dim: int, delta: float) -> np.ndarray:
    """Unitary W = exp(iH) with ||W - 1|| equal to delta.

    H is a random Hermitian matrix rescaled so that its largest eigenvalue
    modulus theta satisfies 2 sin(theta / 2) = delta.
    """
    if delta <= 0.0:
        return np.eye(dim, dtype=complex)
    if delta > 2.0:
        raise ValueError("unitary perturbations are at most 2 away from the identity")
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    hermitian = (z + z.conj().T) / 2.0
    theta = 2.0 * np.arcsin(delta / 2.0)
    hermitian *= theta / np.max(np.abs(np.linalg.eigvalsh(hermitian)))
    return scipy.linalg.expm(1j * hermitian)


def complete_columns(first: np.ndarray, basis: Optional[np.ndarray] = None) -> np.ndarray:
    """Orthonormal columns spanning `basis` (default: the whole space) whose
    first column is the unit vector `first`.

    `first` must lie in the span of `basis`.
    """
    first = np.asarray(first, dtype=complex).reshape(-1)
    if basis is None:
        basis = np.eye(first.shape[0], dtype=complex)
    coords = basis.conj().T @ first
    rest = scipy.linalg.null_space(coords.conj()[np.newaxis, :])
    return basis @ np.column_stack([coords, rest])

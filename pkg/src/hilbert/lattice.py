"""Subspaces as orthonormal frames, and the lattice operations on them."""

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
import scipy.linalg

from ..errors import DimensionMismatch
from .kernel import VectorLike, as_array, op_norm
from .tolerances import DEFAULT_TOLERANCES, Tolerances


@dataclass(frozen=True)
class Event:
    """A subspace of C^ambient_dim held as an orthonormal frame.

    The frame is an ambient_dim x rank matrix; rank 0 is the zero subspace.
    """
    ambient_dim: int
    frame: np.ndarray
    projector: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        frame = np.array(self.frame, dtype=complex)
        if frame.size == 0:
            frame = np.zeros((self.ambient_dim, 0), dtype=complex)
        frame = frame.reshape(self.ambient_dim, -1)
        frame.flags.writeable = False
        projector = frame @ frame.conj().T
        projector.flags.writeable = False
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "projector", projector)

    @property
    def rank(self) -> int:
        return self.frame.shape[1]

    @property
    def is_zero(self) -> bool:
        return self.rank == 0

    def project(self, vector: VectorLike) -> np.ndarray:
        return self.frame @ (self.frame.conj().T @ as_array(vector))

    def coordinates(self, vector: VectorLike) -> np.ndarray:
        """Frame coordinates of a vector (its component outside is dropped)."""
        return self.frame.conj().T @ as_array(vector)

    def contains_vector(self, vector: VectorLike, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
        array = as_array(vector)
        scale = max(1.0, float(np.linalg.norm(array)))
        return float(np.linalg.norm(array - self.project(array))) <= tol.exact * scale

    @classmethod
    def zero(cls, dim: int) -> "Event":
        return cls(dim, np.zeros((dim, 0), dtype=complex))

    @classmethod
    def full(cls, dim: int) -> "Event":
        return cls(dim, np.eye(dim, dtype=complex))


def _check_same_dim(*events: Event) -> int:
    dims = {e.ambient_dim for e in events}
    if len(dims) != 1:
        raise DimensionMismatch("events live in different spaces", {"dims": sorted(dims)})
    return dims.pop()


def orthonormal_span(matrix: np.ndarray, cutoff: float) -> np.ndarray:
    """Orthonormal basis of the column space, keeping singular values > cutoff."""
    if matrix.shape[1] == 0:
        return np.zeros((matrix.shape[0], 0), dtype=complex)
    u, s, _ = scipy.linalg.svd(matrix, full_matrices=False)
    return u[:, s > cutoff]


def span(vectors: Iterable[VectorLike], tol: Tolerances = DEFAULT_TOLERANCES) -> Event:
    """Event spanned by the given vectors."""
    columns = [as_array(v) for v in vectors]
    if not columns:
        raise DimensionMismatch("span needs at least one vector to fix the dimension")
    dims = {c.shape[0] for c in columns}
    if len(dims) != 1:
        raise DimensionMismatch("vectors have different dimensions", {"dims": sorted(dims)})
    dim = dims.pop()
    return Event(dim, orthonormal_span(np.column_stack(columns), tol.rank))


def event_from_frame(frame: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> Event:
    """Event spanned by the columns of a (not necessarily orthonormal) matrix."""
    frame = np.asarray(frame, dtype=complex)
    return Event(frame.shape[0], orthonormal_span(frame, tol.rank))


def meet(e: Event, f: Event, tol: Tolerances = DEFAULT_TOLERANCES) -> Event:
    """Intersection, from principal vectors whose cosine exceeds 1 - tol.rank."""
    dim = _check_same_dim(e, f)
    if e.is_zero or f.is_zero:
        return Event.zero(dim)
    y, s, _ = scipy.linalg.svd(e.frame.conj().T @ f.frame, full_matrices=False)
    shared = y[:, s > 1.0 - tol.rank]
    return Event(dim, orthonormal_span(e.frame @ shared, tol.rank))


def join(e: Event, f: Event, tol: Tolerances = DEFAULT_TOLERANCES) -> Event:
    """Closed span of the union."""
    dim = _check_same_dim(e, f)
    return Event(dim, orthonormal_span(np.hstack([e.frame, f.frame]), tol.rank))


def join_all(events: Iterable[Event], dim: int, tol: Tolerances = DEFAULT_TOLERANCES) -> Event:
    result = Event.zero(dim)
    for event in events:
        result = join(result, event, tol)
    return result


def ortho(e: Event) -> Event:
    """Orthogonal complement."""
    if e.is_zero:
        return Event.full(e.ambient_dim)
    return Event(e.ambient_dim, scipy.linalg.null_space(e.frame.conj().T))


def overlap_norm(e: Event, f: Event) -> float:
    """||Pi_E Pi_F||, the cosine of the smallest principal angle."""
    _check_same_dim(e, f)
    return op_norm(e.frame.conj().T @ f.frame)


def is_orthogonal(e: Event, f: Event, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    return overlap_norm(e, f) <= tol.exact


def is_contained(small: Event, big: Event, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """small is a subspace of big: ||(1 - Pi_big) Pi_small|| <= tol.exact."""
    _check_same_dim(small, big)
    if small.is_zero:
        return True
    leak = small.frame - big.frame @ (big.frame.conj().T @ small.frame)
    return op_norm(leak) <= tol.exact


def event_distance(e: Event, f: Event) -> float:
    """||Pi_E - Pi_F||, zero iff the subspaces coincide."""
    _check_same_dim(e, f)
    return op_norm(e.projector - f.projector)


def same_event(e: Event, f: Event, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    return e.rank == f.rank and event_distance(e, f) <= tol.exact

"""Sample spaces, dynamics and history spaces in the Heisenberg picture."""

from dataclasses import dataclass, field
from math import prod
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.settings import ENUMERATION_CAP
from ..errors import DimensionMismatch, EnumerationCapExceeded, InvalidPartition, ZeroVector
from ..events import Partition
from ..hilbert import (
    DEFAULT_TOLERANCES,
    Event,
    Tolerances,
    as_array,
    isometry_defect,
    op_norm,
)
from ..hilbert.lattice import orthonormal_span

History = Tuple[str, ...]


def history_key(history: History) -> str:
    """Printable form of a history, e.g. "up,down"."""
    return ",".join(history)


@dataclass(frozen=True)
class SampleSpace:
    """Orthogonal projective decomposition of the identity, one cell per label."""
    projectors: Tuple[np.ndarray, ...]
    cell_labels: Tuple[str, ...]

    @classmethod
    def create(cls, projectors: Sequence[np.ndarray], cell_labels: Sequence[str],
               tol: Tolerances = DEFAULT_TOLERANCES) -> "SampleSpace":
        if len(projectors) != len(cell_labels) or not projectors:
            raise InvalidPartition("need one label per projector and at least one cell")
        if len(set(cell_labels)) != len(cell_labels):
            raise InvalidPartition("cell labels must be unique", {"labels": list(cell_labels)})
        mats = [np.array(p, dtype=complex) for p in projectors]
        dim = mats[0].shape[0]
        for label, p in zip(cell_labels, mats):
            if p.shape != (dim, dim):
                raise DimensionMismatch(f"projector '{label}' has shape {p.shape}, expected {(dim, dim)}")
            if op_norm(p - p.conj().T) > tol.exact or op_norm(p @ p - p) > tol.exact:
                raise InvalidPartition(f"cell '{label}' is not an orthogonal projector")
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                if op_norm(mats[i] @ mats[j]) > tol.exact:
                    raise InvalidPartition(
                        f"cells '{cell_labels[i]}' and '{cell_labels[j]}' are not orthogonal",
                        {"pair": [cell_labels[i], cell_labels[j]]},
                    )
        if op_norm(sum(mats) - np.eye(dim)) > tol.exact:
            raise InvalidPartition("cells do not sum to the identity")
        for p in mats:
            p.flags.writeable = False
        return cls(tuple(mats), tuple(cell_labels))

    @classmethod
    def from_partition(cls, partition: Partition) -> "SampleSpace":
        return cls(tuple(b.projector for b in partition.blocks), partition.labels)

    @property
    def ambient_dim(self) -> int:
        return self.projectors[0].shape[0]

    def projector(self, label: str) -> np.ndarray:
        try:
            return self.projectors[self.cell_labels.index(label)]
        except ValueError:
            raise KeyError(f"no cell labelled '{label}'") from None

    def to_partition(self, tol: Tolerances = DEFAULT_TOLERANCES) -> Partition:
        """Partition made of the ranges of the nonzero cells."""
        labels, blocks = [], []
        for label, p in zip(self.cell_labels, self.projectors):
            block = Event(p.shape[0], orthonormal_span(p, 0.5))
            if not block.is_zero:
                labels.append(label)
                blocks.append(block)
        return Partition.create(labels, blocks, tol)


@dataclass(frozen=True)
class Dynamics:
    """Time labels t0 < t1 < ... < tn and the unitary steps between them."""
    times: Tuple[float, ...]
    steps: Tuple[np.ndarray, ...]
    cumulative: Tuple[np.ndarray, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        times = tuple(float(t) for t in self.times)
        steps = tuple(np.array(s, dtype=complex) for s in self.steps)
        if len(steps) != len(times) - 1:
            raise DimensionMismatch(f"{len(times)} times need {len(times) - 1} steps, got {len(steps)}")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("times must be strictly increasing")
        cumulative, w = [], None
        for step in steps:
            step.flags.writeable = False
            w = step if w is None else step @ w
            cumulative.append(w)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "cumulative", tuple(cumulative))

    @classmethod
    def create(cls, times: Sequence[float], steps: Sequence[np.ndarray],
               tol: Tolerances = DEFAULT_TOLERANCES) -> "Dynamics":
        dyn = cls(tuple(times), tuple(steps))
        for k, step in enumerate(dyn.steps, start=1):
            if step.ndim != 2 or step.shape[0] != step.shape[1]:
                raise DimensionMismatch(f"step {k} is not square")
            if isometry_defect(step) > tol.exact:
                raise ValueError(f"step {k} is not unitary within tolerance")
        return dyn

    @classmethod
    def trivial(cls, dim: int, n_times: int) -> "Dynamics":
        return cls(tuple(range(n_times + 1)), tuple(np.eye(dim, dtype=complex) for _ in range(n_times)))

    @property
    def n_steps(self) -> int:
        return len(self.steps)

    def evolution(self, k: int) -> np.ndarray:
        """W_k = steps_k ... steps_1, mapping the state at t0 to the state at tk."""
        return self.cumulative[k - 1]


@dataclass(frozen=True)
class HistorySpace:
    """A pure initial state, its dynamics, and one sample space per time t1..tn."""
    dynamics: Dynamics
    sample_spaces: Tuple[SampleSpace, ...]
    initial: np.ndarray
    heisenberg: Tuple[Dict[str, np.ndarray], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        initial = np.array(as_array(self.initial))
        initial.flags.writeable = False
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "sample_spaces", tuple(self.sample_spaces))
        frames = []
        for k, space in enumerate(self.sample_spaces, start=1):
            w = self.dynamics.evolution(k)
            frames.append({l: w.conj().T @ p @ w for l, p in zip(space.cell_labels, space.projectors)})
        object.__setattr__(self, "heisenberg", tuple(frames))

    @classmethod
    def create(cls, dynamics: Dynamics, sample_spaces: Sequence[SampleSpace], initial,
               tol: Tolerances = DEFAULT_TOLERANCES) -> "HistorySpace":
        """Validate dimensions and normalisation, then build."""
        psi = as_array(initial)
        if len(sample_spaces) != dynamics.n_steps:
            raise DimensionMismatch(
                f"{dynamics.n_steps} steps need {dynamics.n_steps} sample spaces, got {len(sample_spaces)}",
            )
        dims = {psi.shape[0]} | {s.ambient_dim for s in sample_spaces} | {s.shape[0] for s in dynamics.steps}
        if len(dims) != 1:
            raise DimensionMismatch("history space components have different dimensions", {"dims": sorted(dims)})
        norm = float(np.linalg.norm(psi))
        if norm == 0.0:
            raise ZeroVector("initial state is zero")
        if abs(norm - 1.0) > tol.exact:
            raise ValueError(f"initial state must be normalised, norm is {norm:.12g}")
        return cls(dynamics, tuple(sample_spaces), psi)

    @property
    def dim(self) -> int:
        return self.initial.shape[0]

    @property
    def n_times(self) -> int:
        return len(self.sample_spaces)

    @property
    def history_count(self) -> int:
        return prod(len(s.cell_labels) for s in self.sample_spaces)

    def validate_history(self, history: Sequence[str]) -> History:
        history = tuple(history)
        if len(history) != self.n_times:
            raise IndexError(f"history has {len(history)} entries, space has {self.n_times} times")
        for k, (label, space) in enumerate(zip(history, self.sample_spaces), start=1):
            if label not in space.cell_labels:
                raise IndexError(f"'{label}' is not a cell of the sample space at time {k}")
        return history


def heisenberg_projector(hs: HistorySpace, k: int, label: str) -> np.ndarray:
    """W_k^dagger P W_k for the cell `label` of the sample space at time t_k (k from 1)."""
    if not 1 <= k <= hs.n_times:
        raise IndexError(f"time index {k} outside 1..{hs.n_times}")
    try:
        return hs.heisenberg[k - 1][label]
    except KeyError:
        raise IndexError(f"'{label}' is not a cell of the sample space at time {k}") from None


def branch_vector(hs: HistorySpace, history: Sequence[str]) -> np.ndarray:
    """psi_alpha = P_{alpha_n}(t_n) ... P_{alpha_1}(t_1) psi_0."""
    history = hs.validate_history(history)
    vector = hs.initial
    for k, label in enumerate(history, start=1):
        vector = hs.heisenberg[k - 1][label] @ vector
    return vector


def history_weight(hs: HistorySpace, history: Sequence[str]) -> float:
    """Squared norm of the branch vector: a weight, not yet a probability."""
    return float(np.linalg.norm(branch_vector(hs, history)) ** 2)


@dataclass
class BranchTable:
    """All enumerated histories with their branch vectors (one row each)."""
    histories: List[History]
    vectors: np.ndarray
    weight_floor: Optional[float] = None

    @property
    def weights(self) -> np.ndarray:
        if self.vectors.size == 0:
            return np.zeros(0)
        return np.sum(np.abs(self.vectors) ** 2, axis=1)

    def __len__(self) -> int:
        return len(self.histories)


def enumerate_branches(hs: HistorySpace, cap: int = ENUMERATION_CAP,
                       weight_floor: Optional[float] = None) -> BranchTable:
    """Breadth-first enumeration in lexicographic cell order.

    With a weight floor, prefixes of weight <= floor are pruned; the floor is
    recorded on the table so reports can flag it.
    """
    total = hs.history_count
    if total > cap:
        raise EnumerationCapExceeded(
            f"{total} histories exceed the enumeration cap {cap}", {"histories": total, "cap": cap},
        )
    prefixes: List[History] = [()]
    vectors = hs.initial[np.newaxis, :]
    for k, space in enumerate(hs.sample_spaces):
        projectors = hs.heisenberg[k]
        new_prefixes, new_vectors = [], []
        for prefix, vector in zip(prefixes, vectors):
            for label in space.cell_labels:
                branch = projectors[label] @ vector
                if weight_floor is not None and np.vdot(branch, branch).real <= weight_floor:
                    continue
                new_prefixes.append(prefix + (label,))
                new_vectors.append(branch)
        prefixes = new_prefixes
        vectors = np.array(new_vectors, dtype=complex).reshape(len(new_vectors), hs.dim)
    return BranchTable(prefixes, vectors, weight_floor)


def prefix_states(hs: HistorySpace, k: int) -> Tuple[List[History], np.ndarray]:
    """Schrodinger-picture prefix states W_k psi_{alpha_1..alpha_k}, one row each."""
    truncated = HistorySpace(
        Dynamics(hs.dynamics.times[: k + 1], hs.dynamics.steps[:k]),
        hs.sample_spaces[:k],
        hs.initial,
    )
    table = enumerate_branches(truncated, cap=max(ENUMERATION_CAP, truncated.history_count))
    w = hs.dynamics.evolution(k)
    return table.histories, table.vectors @ w.T

"""Consistency, additivity of weights, and the branching property."""

from dataclasses import asdict, dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np

from config.settings import ENUMERATION_CAP, MAX_WITNESSES
from ..errors import InvalidMapping
from ..hilbert import DEFAULT_TOLERANCES, Tolerances, op_norm
from .space import History, HistorySpace, enumerate_branches, history_key


def _drop_none(data: dict) -> dict:
    return {k: v for k, v in data.items() if v is not None}


@dataclass
class OverlapPair:
    first: str
    second: str
    overlap: float


@dataclass
class ConsistencyReport:
    """Graded consistency: the largest off-diagonal overlap and who causes it."""
    max_overlap: float
    consistent: bool
    offenders: List[OverlapPair]
    max_interference: float
    n_histories: int
    n_nonzero: int
    weight_floor: Optional[float] = None

    def to_dict(self) -> dict:
        return _drop_none(asdict(self))


def consistency_report(hs: HistorySpace, tol: Tolerances = DEFAULT_TOLERANCES,
                       cap: int = ENUMERATION_CAP, weight_floor: Optional[float] = None,
                       max_offenders: int = MAX_WITNESSES) -> ConsistencyReport:
    """max over distinct histories of |<psi_a, psi_b>|, with offenders sorted by overlap.

    Zero-weight histories stay in the enumeration but never appear as offenders.
    """
    table = enumerate_branches(hs, cap, weight_floor)
    gram = table.vectors.conj() @ table.vectors.T
    upper = np.triu_indices(len(table), k=1)
    overlaps = np.abs(gram[upper])
    interference = 2.0 * np.abs(gram[upper].real)
    max_overlap = float(overlaps.max()) if overlaps.size else 0.0
    max_interference = float(interference.max()) if interference.size else 0.0

    # light histories still count towards max_overlap, only not as offenders
    nonzero = table.weights > tol.rank
    eligible = nonzero[upper[0]] & nonzero[upper[1]]
    flagged = np.flatnonzero((overlaps > tol.consistency) & eligible)
    # stable sort keeps enumeration order among equal overlaps
    flagged = flagged[np.argsort(-overlaps[flagged], kind="stable")][:max_offenders]
    offenders = [
        OverlapPair(
            history_key(table.histories[upper[0][i]]),
            history_key(table.histories[upper[1][i]]),
            float(overlaps[i]),
        )
        for i in flagged
    ]
    return ConsistencyReport(
        max_overlap=max_overlap,
        consistent=max_overlap <= tol.consistency,
        offenders=offenders,
        max_interference=max_interference,
        n_histories=len(table),
        n_nonzero=int(nonzero.sum()),
        weight_floor=weight_floor,
    )


CoarseMapping = Sequence[Mapping[str, Sequence[str]]]


@dataclass
class AdditivityReport:
    max_violation: float
    worst_history: Optional[str]
    n_coarse: int

    def to_dict(self) -> dict:
        return _drop_none(asdict(self))


def _validate_mapping(fine: HistorySpace, coarse: HistorySpace, mapping: CoarseMapping,
                      tol: Tolerances) -> List[Dict[str, str]]:
    """Check that each coarse projector is the sum of its fine cells; return fine->coarse maps."""
    if fine.n_times != coarse.n_times or len(mapping) != fine.n_times:
        raise InvalidMapping("mapping, fine and coarse spaces must cover the same times")
    if fine.dim != coarse.dim:
        raise InvalidMapping("fine and coarse spaces have different dimensions")
    if np.linalg.norm(fine.initial - coarse.initial) > tol.exact:
        raise InvalidMapping("fine and coarse spaces start from different states")
    for a, b in zip(fine.dynamics.steps, coarse.dynamics.steps):
        if op_norm(a - b) > tol.exact:
            raise InvalidMapping("fine and coarse spaces have different dynamics")
    inverse = []
    for k, (groups, fine_space, coarse_space) in enumerate(
            zip(mapping, fine.sample_spaces, coarse.sample_spaces), start=1):
        if sorted(groups) != sorted(coarse_space.cell_labels):
            raise InvalidMapping(f"time {k}: mapping keys must be the coarse cells")
        used = [label for cells in groups.values() for label in cells]
        if sorted(used) != sorted(fine_space.cell_labels):
            raise InvalidMapping(f"time {k}: every fine cell must be used exactly once")
        for coarse_label, cells in groups.items():
            total = sum(fine_space.projector(c) for c in cells)
            if op_norm(coarse_space.projector(coarse_label) - total) > tol.exact:
                raise InvalidMapping(
                    f"time {k}: cell '{coarse_label}' is not the sum of its fine cells",
                    {"time": k, "cell": coarse_label},
                )
        inverse.append({f: c for c, cells in groups.items() for f in cells})
    return inverse


def additivity_check(fine: HistorySpace, coarse: HistorySpace, mapping: CoarseMapping,
                     tol: Tolerances = DEFAULT_TOLERANCES, cap: int = ENUMERATION_CAP) -> AdditivityReport:
    """max over coarse histories of |p_coarse - sum of fine weights inside it|.

    `mapping[k]` sends each coarse cell at time k+1 to the fine cells it is made of.
    """
    inverse = _validate_mapping(fine, coarse, mapping, tol)
    fine_table = enumerate_branches(fine, cap)
    sums: Dict[History, float] = {}
    for history, weight in zip(fine_table.histories, fine_table.weights):
        image = tuple(inverse[k][label] for k, label in enumerate(history))
        sums[image] = sums.get(image, 0.0) + float(weight)
    coarse_table = enumerate_branches(coarse, cap)
    worst, worst_history = 0.0, None
    for history, weight in zip(coarse_table.histories, coarse_table.weights):
        violation = abs(float(weight) - sums.get(history, 0.0))
        if violation > worst:
            worst, worst_history = violation, history_key(history)
    return AdditivityReport(worst, worst_history, len(coarse_table))


@dataclass
class BranchingWitness:
    """Two histories that diverge at `diverge_at` and agree again at `agree_at` (times from 1)."""
    first: str
    second: str
    diverge_at: int
    agree_at: int
    weights: List[float] = field(default_factory=list)


@dataclass
class BranchingReport:
    branching: bool
    witness: Optional[BranchingWitness] = None

    def to_dict(self) -> dict:
        return _drop_none(asdict(self))


def branching_report(hs: HistorySpace, tol: Tolerances = DEFAULT_TOLERANCES,
                     cap: int = ENUMERATION_CAP) -> BranchingReport:
    """Look for a pair of nonzero histories that diverge and later agree."""
    table = enumerate_branches(hs, cap)
    keep = np.flatnonzero(table.weights > tol.consistency)
    if len(keep) < 2 or hs.n_times < 2:
        return BranchingReport(True)
    codes = np.array([
        [hs.sample_spaces[k].cell_labels.index(label) for k, label in enumerate(table.histories[i])]
        for i in keep
    ])
    n = hs.n_times
    for row in range(len(keep)):
        equal = codes == codes[row]
        differs = ~equal
        has_diff = differs.any(axis=1)
        has_equal = equal.any(axis=1)
        first_diff = np.argmax(differs, axis=1)
        last_equal = n - 1 - np.argmax(equal[:, ::-1], axis=1)
        bad = np.flatnonzero(has_diff & has_equal & (first_diff < last_equal))
        if bad.size:
            other = int(bad[0])
            a, b = int(keep[row]), int(keep[other])
            return BranchingReport(False, BranchingWitness(
                history_key(table.histories[a]),
                history_key(table.histories[b]),
                int(first_diff[other]) + 1,
                int(last_equal[other]) + 1,
                [float(table.weights[a]), float(table.weights[b])],
            ))
    return BranchingReport(True)


def is_branching(hs: HistorySpace, tol: Tolerances = DEFAULT_TOLERANCES,
                 cap: int = ENUMERATION_CAP) -> bool:
    return branching_report(hs, tol, cap).branching

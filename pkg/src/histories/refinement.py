"""Constructive branching refinement of consistent history spaces, and the
check of whether its branch lines belong to a given event algebra."""

from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.linalg

from config.settings import ENUMERATION_CAP, MAX_WITNESSES
from ..errors import DimensionMismatch, NotConsistent
from ..events import EventAlgebra
from ..hilbert import DEFAULT_TOLERANCES, Event, Tolerances
from ..hilbert.lattice import orthonormal_span
from .consistency import consistency_report
from .space import HistorySpace, SampleSpace, enumerate_branches, history_key, prefix_states

REMAINDER = "*"


def _require_consistent(hs: HistorySpace, tol: Tolerances, cap: int) -> None:
    report = consistency_report(hs, tol, cap)
    if not report.consistent:
        raise NotConsistent(
            f"history space is not consistent (max overlap {report.max_overlap:.3e})",
            {"max_overlap": report.max_overlap},
        )


def _split_block(projector: np.ndarray, states: np.ndarray,
                 tol: Tolerances) -> Tuple[List[np.ndarray], Optional[np.ndarray]]:
    """Unit vectors along the states (heaviest first, orthogonalised) and the
    frame of what is left of the block, or None when nothing is left."""
    frame = orthonormal_span(projector, 0.5)
    coords = states @ frame.conj()
    weights = np.sum(np.abs(coords) ** 2, axis=1)
    lines: List[np.ndarray] = []
    for i in np.argsort(-weights, kind="stable"):
        if weights[i] <= tol.consistency:
            continue
        residual = coords[i].copy()
        for line in lines:
            residual -= line * np.vdot(line, residual)
        norm = np.linalg.norm(residual)
        if norm <= tol.near_orth * np.sqrt(weights[i]):
            continue
        lines.append(residual / norm)
    if len(lines) == frame.shape[1]:
        rest = None
    elif lines:
        rest = frame @ scipy.linalg.null_space(np.array(lines).conj())
    else:
        rest = frame
    return [frame @ c for c in lines], rest


def bc_refine(hs: HistorySpace, tol: Tolerances = DEFAULT_TOLERANCES,
              cap: int = ENUMERATION_CAP) -> HistorySpace:
    """Refine every sample space so that the result has a branching structure.

    At time k each cell is split into lines along the prefix states
    W_k psi_{alpha_1..alpha_k} that end in it, plus one remainder cell.
    Cells are labelled "<cell>/<n>" and "<cell>/*".
    """
    _require_consistent(hs, tol, cap)
    spaces = []
    for k, space in enumerate(hs.sample_spaces, start=1):
        histories, states = prefix_states(hs, k)
        labels, projectors = [], []
        for label, projector in zip(space.cell_labels, space.projectors):
            mine = [i for i, h in enumerate(histories) if h[-1] == label]
            lines, rest = _split_block(projector, states[mine].reshape(len(mine), hs.dim), tol)
            for n, line in enumerate(lines):
                labels.append(f"{label}/{n}")
                projectors.append(np.outer(line, line.conj()))
            if rest is not None:
                labels.append(f"{label}/{REMAINDER}")
                projectors.append(rest @ rest.conj().T)
        spaces.append(SampleSpace.create(projectors, labels, tol))
    return HistorySpace.create(hs.dynamics, spaces, hs.initial, tol)


def refinement_mapping(refined: HistorySpace) -> List[Dict[str, List[str]]]:
    """Coarse-graining map from a bc_refine result back to the cells it split."""
    mapping = []
    for space in refined.sample_spaces:
        groups: Dict[str, List[str]] = {}
        for label in space.cell_labels:
            groups.setdefault(label.rsplit("/", 1)[0], []).append(label)
        mapping.append(groups)
    return mapping


@dataclass
class AlgebraMembershipReport:
    """Whether the branch lines of the refinement are members of an event algebra."""
    all_members: bool
    missing: List[str]
    members: Dict[str, List[str]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def refinement_in_algebra(hs: HistorySpace, alg: EventAlgebra, tol: Tolerances = DEFAULT_TOLERANCES,
                          cap: int = ENUMERATION_CAP, max_missing: int = MAX_WITNESSES) -> AlgebraMembershipReport:
    """Test the line through each nonzero final state W_n psi_alpha for membership in `alg`.

    `members` maps each history whose line is a member to the block labels it is made of.
    """
    if alg.ambient_dim != hs.dim:
        raise DimensionMismatch("algebra and history space live in different spaces")
    _require_consistent(hs, tol, cap)
    table = enumerate_branches(hs, cap)
    final = table.vectors @ hs.dynamics.evolution(hs.n_times).T
    missing, members = [], {}
    for history, state, weight in zip(table.histories, final, table.weights):
        if weight <= tol.consistency:
            continue
        line = Event(hs.dim, (state / np.linalg.norm(state))[:, np.newaxis])
        member = alg.contains(line, tol)
        if member is None:
            missing.append(history_key(history))
        else:
            members[history_key(history)] = sorted(member)
    return AlgebraMembershipReport(not missing, missing[:max_missing], members)

"""Finite-dimensional Hilbert-space kernel."""

from .tolerances import Tolerances, DEFAULT_TOLERANCES
from .kernel import (
    StateVector,
    Operator,
    OperatorKind,
    as_array,
    inner,
    op_norm,
    op_norm_distance,
    isometry_defect,
    random_state,
    random_unitary,
    perturbation,
    complete_columns,
)
from .lattice import (
    Event,
    span,
    event_from_frame,
    meet,
    join,
    join_all,
    ortho,
    overlap_norm,
    is_orthogonal,
    is_contained,
    event_distance,
    same_event,
)

__all__ = [
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "StateVector",
    "Operator",
    "OperatorKind",
    "as_array",
    "inner",
    "op_norm",
    "op_norm_distance",
    "isometry_defect",
    "random_state",
    "random_unitary",
    "perturbation",
    "complete_columns",
    "Event",
    "span",
    "event_from_frame",
    "meet",
    "join",
    "join_all",
    "ortho",
    "overlap_norm",
    "is_orthogonal",
    "is_contained",
    "event_distance",
    "same_event",
]

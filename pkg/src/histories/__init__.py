"""Consistent-histories engine."""

from .space import (
    History,
    SampleSpace,
    Dynamics,
    HistorySpace,
    BranchTable,
    history_key,
    heisenberg_projector,
    branch_vector,
    history_weight,
    enumerate_branches,
    prefix_states,
)
from .consistency import (
    OverlapPair,
    ConsistencyReport,
    AdditivityReport,
    BranchingWitness,
    BranchingReport,
    consistency_report,
    additivity_check,
    branching_report,
    is_branching,
)
from .refinement import (
    AlgebraMembershipReport,
    bc_refine,
    refinement_mapping,
    refinement_in_algebra,
)
from .generators import random_branching_space, crossing_space

__all__ = [
    "History",
    "SampleSpace",
    "Dynamics",
    "HistorySpace",
    "BranchTable",
    "history_key",
    "heisenberg_projector",
    "branch_vector",
    "history_weight",
    "enumerate_branches",
    "prefix_states",
    "OverlapPair",
    "ConsistencyReport",
    "AdditivityReport",
    "BranchingWitness",
    "BranchingReport",
    "consistency_report",
    "additivity_check",
    "branching_report",
    "is_branching",
    "AlgebraMembershipReport",
    "bc_refine",
    "refinement_mapping",
    "refinement_in_algebra",
    "random_branching_space",
    "crossing_space",
]

"""Quantum decision problems and the availability constructions."""

from .problem import Act, DecisionProblem, IDENTITY_LABEL, same_act, smallest_event, smallest_member
from .richness import (
    CONDITIONS,
    ConditionResult,
    RichnessReport,
    ProblemContinuityReport,
    check_richness,
    check_problem_continuity,
)
from .availability import (
    LiftInfeasible,
    InfeasibleByDimension,
    BranchSource,
    BranchingActSpec,
    ErasurePair,
    compatible_lift,
    dimension_ledger,
    reward_act_search,
    branching_act,
    branch_weights,
    erasure_target,
    send_state,
    erasure_pair,
)

__all__ = [
    "Act",
    "DecisionProblem",
    "IDENTITY_LABEL",
    "same_act",
    "smallest_event",
    "smallest_member",
    "CONDITIONS",
    "ConditionResult",
    "RichnessReport",
    "ProblemContinuityReport",
    "check_richness",
    "check_problem_continuity",
    "LiftInfeasible",
    "InfeasibleByDimension",
    "BranchSource",
    "BranchingActSpec",
    "ErasurePair",
    "compatible_lift",
    "dimension_ledger",
    "reward_act_search",
    "branching_act",
    "branch_weights",
    "erasure_target",
    "send_state",
    "erasure_pair",
]

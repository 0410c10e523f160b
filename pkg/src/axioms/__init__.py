"""Preference axioms, valuation strategies and their checkers."""

from .strategies import (
    INDIFFERENCE_TOL,
    StrategyKind,
    Strategy,
    PreferenceOrder,
    evaluate,
    value_of_outcome,
    preference_order,
    compare,
)
from .checks import (
    AxiomReport,
    Relation,
    TransportedTuple,
    Continuation,
    DiachronicScenario,
    BranchingContext,
    sample_states,
    transported_tuples,
    check_ordering,
    check_ordering_all,
    check_state_supervenience,
    check_macrostate_indifference,
    check_diachronic_consistency,
    check_branching_indifference,
    check_solution_continuity,
    check_solution_continuity_all,
    check_act_nondegeneracy,
)
from .suite import run_suite, suite_passed

__all__ = [
    "INDIFFERENCE_TOL",
    "StrategyKind",
    "Strategy",
    "PreferenceOrder",
    "evaluate",
    "value_of_outcome",
    "preference_order",
    "compare",
    "AxiomReport",
    "Relation",
    "TransportedTuple",
    "Continuation",
    "DiachronicScenario",
    "BranchingContext",
    "sample_states",
    "transported_tuples",
    "check_ordering",
    "check_ordering_all",
    "check_state_supervenience",
    "check_macrostate_indifference",
    "check_diachronic_consistency",
    "check_branching_indifference",
    "check_solution_continuity",
    "check_solution_continuity_all",
    "check_act_nondegeneracy",
    "run_suite",
    "suite_passed",
]

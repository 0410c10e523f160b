"""Run every preference check for one strategy on one decision problem."""

from typing import Iterable, List, Optional

import numpy as np

from config.settings import INCLUDE_MACROSTATE_INDIFFERENCE
from ..decision import DecisionProblem
from ..hilbert import DEFAULT_TOLERANCES, Tolerances
from .checks import (
    AxiomReport,
    BranchingContext,
    DiachronicScenario,
    check_act_nondegeneracy,
    check_branching_indifference,
    check_diachronic_consistency,
    check_macrostate_indifference,
    check_ordering_all,
    check_solution_continuity_all,
    check_state_supervenience,
)
from .strategies import Strategy


def run_suite(dp: DecisionProblem, strategy: Strategy, rng: np.random.Generator,
              diachronic: Iterable[DiachronicScenario] = (),
              contexts: Iterable[BranchingContext] = (),
              delta: float = 1e-3, n_perturbations: int = 10, trials: int = 50,
              include_macrostate_indifference: Optional[bool] = None,
              tol: Tolerances = DEFAULT_TOLERANCES) -> List[AxiomReport]:
    """Reports in a fixed order: ordering, state supervenience, diachronic
    consistency, branching indifference, solution continuity, act
    nondegeneracy, and macrostate indifference when enabled."""
    if include_macrostate_indifference is None:
        include_macrostate_indifference = INCLUDE_MACROSTATE_INDIFFERENCE
    diachronic = list(diachronic)
    reports = [
        check_ordering_all(dp, strategy, tol),
        check_state_supervenience(dp, strategy, rng, trials, tol),
        check_diachronic_consistency(dp, strategy, diachronic, tol),
        check_branching_indifference(dp, strategy, contexts, tol),
        check_solution_continuity_all(dp, strategy, rng, n_perturbations, delta, tol),
        check_act_nondegeneracy(dp, strategy, tol),
    ]
    reports[2].numerics["scenarios"] = len(diachronic)
    if include_macrostate_indifference:
        reports.append(check_macrostate_indifference(dp, strategy, rng=rng, trials=trials, tol=tol))
    return reports


def suite_passed(reports: Iterable[AxiomReport]) -> bool:
    return all(r.passed for r in reports)

"""Demo registry: built-in scenarios by name, with the report each one produces."""

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from ..axioms import (
    Strategy,
    StrategyKind,
    check_branching_indifference,
    check_diachronic_consistency,
    check_solution_continuity,
    compare,
    preference_order,
)
from ..decision import IDENTITY_LABEL, InfeasibleByDimension, LiftInfeasible
from ..events import Partition
from ..hilbert import DEFAULT_TOLERANCES, Tolerances
from ..histories import (
    HistorySpace,
    SampleSpace,
    additivity_check,
    branching_report,
    consistency_report,
    enumerate_branches,
    history_key,
    refinement_in_algebra,
)
from ..measures import born_weights, branch_count, consecutive_grains, count_stability
from ..schemas import DEMO_INPUTS, DEMO_SCHEMAS, validate_demo_arguments
from .bets import build_abc_bets, build_branching_indifference_composite, build_imprecise_bet
from .bundle import ScenarioBundle
from .contradictions import build_erasure_contradiction, build_reward_availability_contradiction
from .grid import build_spreading_tail
from .measurement import build_algebra_membership_instance, build_measurement_model, build_recombining_space
from .pointer import build_pointer_decompositions


@dataclass
class DemoResult:
    """What a demo reports, whether it found violations, and the scenario it ran on."""
    report: Dict[str, Any]
    findings: bool
    bundle: Optional[ScenarioBundle] = None


def _weights(hs: HistorySpace, tol: Tolerances) -> Dict[str, float]:
    table = enumerate_branches(hs)
    return {history_key(h): float(w) for h, w in zip(table.histories, table.weights) if w > tol.rank}


def demo_measurement(args: Dict[str, Any], rng: np.random.Generator, tol: Tolerances) -> DemoResult:
    hs = build_measurement_model(args["coeffs"], args["remeasure"])
    consistency = consistency_report(hs, tol)
    branching = branching_report(hs, tol)
    report = {
        "weights": _weights(hs, tol),
        "consistency": consistency.to_dict(),
        "branching": branching.to_dict(),
    }
    findings = not (consistency.consistent and branching.branching)
    return DemoResult(report, findings, ScenarioBundle("measurement", history_space=hs))


def demo_recombining(args: Dict[str, Any], rng: np.random.Generator, tol: Tolerances) -> DemoResult:
    """Overlap, interference and additivity against a space that skips the first reading."""
    hs = build_recombining_space()
    identity = SampleSpace((np.eye(hs.dim, dtype=complex),), ("*",))
    coarse = HistorySpace(hs.dynamics, (identity, hs.sample_spaces[1]), hs.initial)
    mapping = [{"*": list(hs.sample_spaces[0].cell_labels)},
               {label: [label] for label in hs.sample_spaces[1].cell_labels}]
    consistency = consistency_report(hs, tol)
    report = {
        "weights": _weights(hs, tol),
        "consistency": consistency.to_dict(),
        "branching": branching_report(hs, tol).to_dict(),
        "additivity": additivity_check(hs, coarse, mapping, tol).to_dict(),
    }
    return DemoResult(report, not consistency.consistent, ScenarioBundle("recombining", history_space=hs))


def demo_algebra_membership(args: Dict[str, Any], rng: np.random.Generator, tol: Tolerances) -> DemoResult:
    hs, algebra = build_algebra_membership_instance()
    membership = refinement_in_algebra(hs, algebra, tol)
    report = {
        "algebra": [sorted(atom) for atom in algebra.atoms()],
        "membership": membership.to_dict(),
    }
    return DemoResult(report, not membership.all_members, ScenarioBundle("algebra-membership", history_space=hs))


def _bet_checks(bundle: ScenarioBundle, kinds: List[StrategyKind], tol: Tolerances) -> DemoResult:
    """Values and rankings at the root, plus the diachronic and branching-indifference checks."""
    dp = bundle.decision_problem
    root = bundle.diachronic[0].macrostate
    report: Dict[str, Any] = {}
    findings = False
    for kind in kinds:
        strategy = Strategy(kind)
        order = preference_order(strategy, dp, root, bundle.state, tol)
        diachronic = check_diachronic_consistency(dp, strategy, bundle.diachronic, tol)
        branching = check_branching_indifference(dp, strategy, bundle.contexts, tol)
        findings = findings or not (diachronic.passed and branching.passed)
        report[strategy.name] = {
            "values": order.values,
            "ranking": order.ranking(),
            "diachronic_consistency": diachronic.to_dict(),
            "branching_indifference": branching.to_dict(),
        }
    return DemoResult(report, findings, bundle)


def demo_abc_bets(args: Dict[str, Any], rng: np.random.Generator, tol: Tolerances) -> DemoResult:
    return _bet_checks(build_abc_bets(), [StrategyKind.BORN_EU, StrategyKind.COUNTING_EU], tol)


def demo_branching_composite(args: Dict[str, Any], rng: np.random.Generator, tol: Tolerances) -> DemoResult:
    return _bet_checks(build_branching_indifference_composite(),
                       [StrategyKind.BORN_EU, StrategyKind.COUNTING_EU], tol)


def demo_imprecise_bet(args: Dict[str, Any], rng: np.random.Generator, tol: Tolerances) -> DemoResult:
    """Compare the exact and the imprecise bet under expected utility and minimax.

    Minimax reverses the preference for any epsilon above its counting
    threshold, and the exact bet's advantage does not survive perturbation.
    """
    bundle = build_imprecise_bet(args["epsilon"])
    dp = bundle.decision_problem
    report: Dict[str, Any] = {}
    directions = []
    findings = False
    for kind in (StrategyKind.BORN_EU, StrategyKind.MINIMAX):
        strategy = Strategy(kind)
        order = preference_order(strategy, dp, "ready", bundle.state, tol)
        continuity = check_solution_continuity(
            dp, strategy, "ready", bundle.state,
            dp.find_act("ready", "bet"), dp.find_act("ready", IDENTITY_LABEL), rng, tol=tol,
        )
        directions.append(compare(order.values["bet_eps"], order.values[IDENTITY_LABEL]))
        findings = findings or not continuity.passed
        report[strategy.name] = {
            "values": order.values,
            "ranking": order.ranking(),
            "solution_continuity": continuity.to_dict(),
        }
    report["strategies_disagree"] = directions[0] != directions[1]
    return DemoResult(report, findings or report["strategies_disagree"], bundle)


def demo_erasure(args: Dict[str, Any], rng: np.random.Generator, tol: Tolerances) -> DemoResult:
    outcome = build_erasure_contradiction(args["offset"], args["distinct_targets"])
    infeasible = isinstance(outcome.pair.lift, LiftInfeasible)
    report = {"erasure": outcome.pair.to_dict(), "lift_feasible": not infeasible}
    return DemoResult(report, infeasible, outcome.bundle)


def demo_reward_availability(args: Dict[str, Any], rng: np.random.Generator, tol: Tolerances) -> DemoResult:
    outcome = build_reward_availability_contradiction(args["single_reward"])
    if isinstance(outcome.result, InfeasibleByDimension):
        return DemoResult({"feasible": False, "infeasible": outcome.result.to_dict()}, True, outcome.bundle)
    act = outcome.result
    report = {"feasible": True, "act": act.label, "defect": act.defect()}
    return DemoResult(report, False, outcome.bundle)


def _halving_sizes(n: int) -> List[int]:
    """n, n/2, ... while even, then 1: each grain refines the one before."""
    sizes = [n]
    while sizes[-1] % 2 == 0 and sizes[-1] > 1:
        sizes.append(sizes[-1] // 2)
    if sizes[-1] != 1:
        sizes.append(1)
    return sizes


def demo_spreading_tail(args: Dict[str, Any], rng: np.random.Generator, tol: Tolerances) -> DemoResult:
    outcome = build_spreading_tail(args["n"], args["steps"], tol=tol)
    dp = outcome.bundle.decision_problem
    cells: Partition = dp.macrostates
    image = outcome.act.apply(outcome.bundle.state)
    stability = count_stability(image, consecutive_grains(cells, _halving_sizes(args["n"]), tol), tol=tol)
    whole = len(outcome.range_event) == len(cells)
    report = {
        "weights": born_weights(image, cells).to_dict(),
        "branch_count": branch_count(image, cells),
        "range_event": outcome.range_event,
        "range_is_whole_space": whole,
        "count_stability": stability.to_dict(),
    }
    return DemoResult(report, whole and len(cells) > 1, outcome.bundle)


def demo_pointer_decomp(args: Dict[str, Any], rng: np.random.Generator, tol: Tolerances) -> DemoResult:
    result = build_pointer_decompositions(args["n"], args["width"], args["shift"])
    report = result.to_dict()
    report["non_unique"] = result.deviation_lower > tol.near_orth
    return DemoResult(report, report["non_unique"])


class DemoRegistry:
    """Registry of the built-in demonstrations."""

    def __init__(self):
        self._demos: Dict[str, Callable[..., DemoResult]] = {
            "measurement": demo_measurement,
            "recombining": demo_recombining,
            "algebra-membership": demo_algebra_membership,
            "abc-bets": demo_abc_bets,
            "branching-composite": demo_branching_composite,
            "imprecise-bet": demo_imprecise_bet,
            "erasure": demo_erasure,
            "reward-availability": demo_reward_availability,
            "spreading-tail": demo_spreading_tail,
            "pointer-decomp": demo_pointer_decomp,
        }

        self._input_schemas: Dict[str, type] = DEMO_INPUTS

    def get_schemas(self) -> list:
        """Descriptions of every demo and its options."""
        return DEMO_SCHEMAS

    def get_demo_names(self) -> list:
        return list(self._demos.keys())

    def validate_arguments(self, name: str, arguments: Dict[str, Any]) -> tuple:
        """
        Validate demo options against the demo's input model.

        Returns:
            tuple: (is_valid: bool, validated_args or error_message)
        """
        if name not in self._demos:
            return False, f"Unknown demo: {name}"
        return validate_demo_arguments(name, arguments)

    def execute(self, name: str, arguments: Dict[str, Any], rng: np.random.Generator,
                tol: Tolerances = DEFAULT_TOLERANCES) -> DemoResult:
        """
        Run a demo with validated options.

        Raises:
            ValueError: unknown demo or invalid options
            BranchLabError: the scenario cannot be built with these options
        """
        is_valid, result = self.validate_arguments(name, arguments)
        if not is_valid:
            raise ValueError(result)
        return self._demos[name](result, rng, tol)

    def describe_demo(self, name: str) -> Optional[dict]:
        for schema in DEMO_SCHEMAS:
            if schema["name"] == name:
                return schema
        return None


_registry: Optional[DemoRegistry] = None


def get_registry() -> DemoRegistry:
    """Get the singleton demo registry instance."""
    global _registry
    if _registry is None:
        _registry = DemoRegistry()
    return _registry

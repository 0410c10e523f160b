"""Checkers for the preference axioms.

Each checker returns an AxiomReport; violations are witnesses in the report,
never exceptions.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from config.settings import MAX_WITNESSES
from ..decision import Act, DecisionProblem, IDENTITY_LABEL, smallest_member
from ..errors import InvalidPartition
from ..hilbert import DEFAULT_TOLERANCES, Tolerances, as_array, complete_columns, perturbation
from .strategies import (
    INDIFFERENCE_TOL,
    PreferenceOrder,
    Strategy,
    compare,
    evaluate,
    preference_order,
)


@dataclass
class AxiomReport:
    axiom: str
    strategy: str
    passed: bool = True
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    numerics: Dict[str, Any] = field(default_factory=dict)

    def fail(self, witness: Dict[str, Any], cap: int = MAX_WITNESSES) -> None:
        self.passed = False
        if len(self.witnesses) < cap:
            self.witnesses.append(witness)

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "strategy": self.strategy,
            "pass": self.passed,
            "witnesses": self.witnesses,
            "numerics": self.numerics,
        }


def sample_states(dp: DecisionProblem, macrostate: str) -> Tuple[np.ndarray, ...]:
    """States listed for the macrostate, or its first frame vector."""
    return dp.states.get(macrostate) or (dp.macrostate(macrostate).frame[:, 0],)


def _contexts(dp: DecisionProblem):
    """(macrostate, state) pairs for every macrostate with a nonempty act list."""
    for label in dp.macrostates.labels:
        if dp.acts_at(label):
            for state in sample_states(dp, label):
                yield label, state


# Ordering

@dataclass
class Relation:
    """An explicit weak-preference relation: (a, b) means a is at least as good as b."""
    items: List[str]
    pairs: List[Tuple[str, str]]


def check_ordering(order: Union[PreferenceOrder, Relation], strategy_name: str = "explicit") -> AxiomReport:
    """Totality and transitivity of a weak preference relation."""
    if isinstance(order, PreferenceOrder):
        items, pairs = sorted(order.values), order.relation()
    else:
        items, pairs = list(order.items), order.pairs
    weak = set(pairs) | {(a, a) for a in items}
    report = AxiomReport("ordering", strategy_name, numerics={"acts": len(items)})
    for a, b in combinations(items, 2):
        if (a, b) not in weak and (b, a) not in weak:
            report.fail({"incomparable": [a, b]})
    for a in items:
        for b in items:
            if (a, b) not in weak or a == b:
                continue
            for c in items:
                if c in (a, b) or (b, c) not in weak or (a, c) in weak:
                    continue
                witness = {"intransitive": [a, b, c]}
                if (c, a) in weak:
                    witness["cycle"] = [a, b, c, a]
                report.fail(witness)
    return report


def check_ordering_all(dp: DecisionProblem, strategy: Strategy, tol: Tolerances = DEFAULT_TOLERANCES) -> AxiomReport:
    report = AxiomReport("ordering", strategy.name)
    checked, rankings = 0, {}
    for label, state in _contexts(dp):
        order = preference_order(strategy, dp, label, state, tol)
        checked += 1
        sub = check_ordering(order, strategy.name)
        for witness in sub.witnesses:
            report.fail({"macrostate": label, **witness})
        rankings.setdefault(label, []).append(order.ranking())
    report.numerics.update({"contexts": checked, "rankings": rankings})
    return report


# State Supervenience and Macrostate Indifference share transported tuples

@dataclass
class TransportedTuple:
    """(M, psi, U, V) and a second tuple (M', psi', U', V') in another context."""
    macrostate: str
    state: np.ndarray
    u: Act
    v: Act
    other_macrostate: str
    other_state: np.ndarray
    other_u: Act
    other_v: Act


def _transport(dp: DecisionProblem, source: str, psi: np.ndarray, target: str,
               rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """A state psi' in `target` with ||psi'|| = ||psi||, and an isometry S from
    `target` (frame coordinates) into `source` with S psi' = psi."""
    src, dst = dp.macrostate(source), dp.macrostate(target)
    direction = rng.normal(size=dst.rank) + 1j * rng.normal(size=dst.rank)
    direction /= np.linalg.norm(direction)
    norm = np.linalg.norm(psi)
    coords = src.coordinates(psi) / norm
    isometry = src.frame @ complete_columns(coords)[:, :dst.rank] @ complete_columns(direction).conj().T
    return norm * (dst.frame @ direction), isometry


def transported_tuples(dp: DecisionProblem, rng: np.random.Generator, trials: int = 50) -> List[TransportedTuple]:
    """Pairs of contexts with identical final states: U' = U S and V' = V S
    on a macrostate of no larger rank, relabelled so they count as different acts."""
    tuples: List[TransportedTuple] = []
    for label, state in _contexts(dp):
        psi = as_array(state)
        rank = dp.macrostate(label).rank
        for u, v in combinations(dp.acts_at(label), 2):
            for other in dp.macrostates.labels:
                if dp.macrostate(other).rank > rank:
                    continue
                if len(tuples) >= trials:
                    return tuples
                psi2, s = _transport(dp, label, psi, other, rng)
                block = dp.macrostate(other)
                tuples.append(TransportedTuple(
                    label, psi, u, v, other, psi2,
                    Act(block, u.operator @ s, f"{u.label}'"),
                    Act(block, v.operator @ s, f"{v.label}'"),
                ))
    return tuples


def _tuple_witness(t: TransportedTuple, first: int, second: int) -> Dict[str, Any]:
    return {
        "context": [t.macrostate, t.other_macrostate],
        "acts": [t.u.label, t.v.label, t.other_u.label, t.other_v.label],
        "comparisons": [first, second],
    }


def check_state_supervenience(dp: DecisionProblem, strategy: Strategy, rng: np.random.Generator,
                              trials: int = 50, tol: Tolerances = DEFAULT_TOLERANCES) -> AxiomReport:
    """Preferences depend only on final states: U psi = U' psi' and V psi = V' psi'
    must give the same preference direction."""
    report = AxiomReport("state_supervenience", strategy.name)
    tuples = transported_tuples(dp, rng, trials)
    for t in tuples:
        first = compare(evaluate(strategy, dp, t.macrostate, t.state, t.u, tol),
                        evaluate(strategy, dp, t.macrostate, t.state, t.v, tol))
        second = compare(evaluate(strategy, dp, t.other_macrostate, t.other_state, t.other_u, tol),
                         evaluate(strategy, dp, t.other_macrostate, t.other_state, t.other_v, tol))
        if first != second:
            report.fail(_tuple_witness(t, first, second))
    report.numerics["tuples"] = len(tuples)
    return report


def check_macrostate_indifference(dp: DecisionProblem, strategy: Strategy,
                                  tuples: Optional[Sequence[TransportedTuple]] = None,
                                  rng: Optional[np.random.Generator] = None, trials: int = 50,
                                  tol: Tolerances = DEFAULT_TOLERANCES) -> AxiomReport:
    """When U psi and U' psi' (and V psi, V' psi') carry equal reward weights,
    U is preferred to V exactly when U' is preferred to V'."""
    if tuples is None:
        tuples = transported_tuples(dp, rng if rng is not None else np.random.default_rng(0), trials)
    report = AxiomReport("macrostate_indifference", strategy.name)
    applicable = 0
    for t in tuples:
        s1, s2 = np.linalg.norm(t.state) ** 2, np.linalg.norm(t.other_state) ** 2
        same = all(
            abs(w1 / s1 - w2 / s2) <= tol.exact
            for a, b in ((t.u, t.other_u), (t.v, t.other_v))
            for w1, w2 in zip(dp.reward_weights(a.apply(t.state)).values(),
                              dp.reward_weights(b.apply(t.other_state)).values())
        )
        if not same:
            continue
        applicable += 1
        first = compare(evaluate(strategy, dp, t.macrostate, t.state, t.u, tol),
                        evaluate(strategy, dp, t.macrostate, t.state, t.v, tol))
        second = compare(evaluate(strategy, dp, t.other_macrostate, t.other_state, t.other_u, tol),
                         evaluate(strategy, dp, t.other_macrostate, t.other_state, t.other_v, tol))
        if first != second:
            report.fail(_tuple_witness(t, first, second))
    report.numerics.update({"tuples": len(tuples), "applicable": applicable})
    return report


# Diachronic Consistency

@dataclass
class Continuation:
    """Per-branch acts, by label, applied after the first act."""
    label: str
    acts: Dict[str, str]


@dataclass
class DiachronicScenario:
    """First act `act` at (macrostate, state), the branches it splits into,
    and pairs of continuations to compare."""
    macrostate: str
    state: np.ndarray
    act: str
    branches: List[str]
    pairs: List[Tuple[Continuation, Continuation]]


def _composite(dp: DecisionProblem, first: Act, continuation: Continuation,
               branches: Sequence[str]) -> Act:
    operator = np.zeros((dp.ambient_dim, dp.ambient_dim), dtype=complex)
    for branch in branches:
        label = continuation.acts.get(branch, IDENTITY_LABEL)
        if label == IDENTITY_LABEL:
            operator += dp.macrostate(branch).projector
        else:
            operator += dp.find_act(branch, label).operator
    return Act(first.domain, operator @ first.matrix, f"{continuation.label}.{first.label}")


def _branch_value(strategy: Strategy, dp: DecisionProblem, branch: str, phi: np.ndarray,
                  continuation: Continuation, tol: Tolerances) -> float:
    label = continuation.acts.get(branch, IDENTITY_LABEL)
    act = Act.identity(dp.macrostate(branch)) if label == IDENTITY_LABEL else dp.find_act(branch, label)
    return evaluate(strategy, dp, branch, phi, act, tol)


def check_diachronic_consistency(dp: DecisionProblem, strategy: Strategy,
                                 scenarios: Iterable[DiachronicScenario],
                                 tol: Tolerances = DEFAULT_TOLERANCES) -> AxiomReport:
    """Branchwise preferences must carry over to the composite acts.

    A branch is null when ||Pi_Mi U psi|| <= tol.exact and is then ignored.
    Weak preference on every non-null branch with one strict preference must
    give a strict composite preference; indifference on every branch must
    give composite indifference.
    """
    report = AxiomReport("diachronic_consistency", strategy.name)
    values: Dict[str, float] = {}
    for scenario in scenarios:
        psi = as_array(scenario.state)
        first = dp.find_act(scenario.macrostate, scenario.act)
        reach = smallest_member(first, dp.algebra, tol)
        if set(scenario.branches) != set(reach) or len(set(scenario.branches)) != len(scenario.branches):
            raise InvalidPartition(
                f"branches {sorted(scenario.branches)} do not partition the range event {sorted(reach)}",
            )
        image = first.apply(psi)
        phis = {b: dp.macrostate(b).project(image) for b in scenario.branches}
        live = [b for b in scenario.branches if np.linalg.norm(phis[b]) > tol.exact]
        for left, right in scenario.pairs:
            branchwise = {
                b: compare(_branch_value(strategy, dp, b, phis[b], left, tol),
                           _branch_value(strategy, dp, b, phis[b], right, tol))
                for b in live
            }
            lv = evaluate(strategy, dp, scenario.macrostate, psi, _composite(dp, first, left, scenario.branches), tol)
            rv = evaluate(strategy, dp, scenario.macrostate, psi, _composite(dp, first, right, scenario.branches), tol)
            values[f"{left.label}.{first.label}"] = lv
            values[f"{right.label}.{first.label}"] = rv
            composite = compare(lv, rv)
            signs = set(branchwise.values())
            if signs <= {0, 1} and 1 in signs:
                expected = 1
            elif signs <= {0, -1} and -1 in signs:
                expected = -1
            elif signs <= {0}:
                expected = 0
            else:
                continue
            if composite != expected:
                report.fail({
                    "macrostate": scenario.macrostate,
                    "act": first.label,
                    "pair": [left.label, right.label],
                    "branchwise": branchwise,
                    "expected": expected,
                    "composite": composite,
                })
    report.numerics["values"] = values
    return report


# Branching Indifference

@dataclass
class BranchingContext:
    """Root macrostate and state, and the act whose branches get split further."""
    macrostate: str
    state: np.ndarray
    prefix: str


def _stays_in_reward(dp: DecisionProblem, macrostate: str, image: np.ndarray, tol: Tolerances) -> bool:
    return dp.reward(dp.reward_of[macrostate]).contains_vector(image, tol)


def check_branching_indifference(dp: DecisionProblem, strategy: Strategy,
                                 contexts: Iterable[BranchingContext] = (),
                                 tol: Tolerances = DEFAULT_TOLERANCES) -> AxiomReport:
    """Acts that keep the agent inside its reward are valued like doing nothing.

    Besides the direct comparison at each macrostate, every context compares
    the prefix act followed by a within-reward act on one branch (identity on
    the others) against the prefix act alone.
    """
    report = AxiomReport("branching_indifference", strategy.name)
    checked = 0
    for label, state in _contexts(dp):
        psi = as_array(state)
        baseline = evaluate(strategy, dp, label, psi, Act.identity(dp.macrostate(label)), tol)
        for act in dp.acts_at(label):
            if not _stays_in_reward(dp, label, act.apply(psi), tol):
                continue
            checked += 1
            value = evaluate(strategy, dp, label, psi, act, tol)
            if compare(value, baseline) != 0:
                report.fail({"macrostate": label, "act": act.label, "values": [value, baseline]})

    for context in contexts:
        psi = as_array(context.state)
        prefix = dp.find_act(context.macrostate, context.prefix)
        base_value = evaluate(strategy, dp, context.macrostate, psi, prefix, tol)
        image = prefix.apply(psi)
        for branch in sorted(smallest_member(prefix, dp.algebra, tol)):
            block = dp.macrostate(branch)
            phi = block.project(image)
            if np.linalg.norm(phi) <= tol.exact:
                continue
            for act in dp.acts_at(branch):
                if act.label == IDENTITY_LABEL or not _stays_in_reward(dp, branch, act.apply(phi), tol):
                    continue
                checked += 1
                extended = act.operator + np.eye(dp.ambient_dim) - block.projector
                composite = Act(prefix.domain, extended @ prefix.matrix, f"{act.label}.{prefix.label}")
                value = evaluate(strategy, dp, context.macrostate, psi, composite, tol)
                if compare(value, base_value) != 0:
                    report.fail({
                        "macrostate": context.macrostate,
                        "prefix": prefix.label,
                        "branch": branch,
                        "act": act.label,
                        "values": [value, base_value],
                    })
    report.numerics["comparisons"] = checked
    return report


# Solution Continuity

def check_solution_continuity(dp: DecisionProblem, strategy: Strategy, macrostate: str, state,
                              u: Act, v: Act, rng: np.random.Generator, n_perturbations: int = 20,
                              delta: float = 1e-3, tol: Tolerances = DEFAULT_TOLERANCES) -> AxiomReport:
    """Sample unitary perturbations U' = W1 U and V' = W2 V with ||Wi - 1|| = delta
    and check that a strict preference survives all of them."""
    psi = as_array(state)
    report = AxiomReport("solution_continuity", strategy.name)
    gap = evaluate(strategy, dp, macrostate, psi, u, tol) - evaluate(strategy, dp, macrostate, psi, v, tol)
    report.numerics.update({"acts": [u.label, v.label], "gap": gap, "delta": delta})
    if compare(gap, 0.0) == 0:
        report.numerics.update({"premise": False, "min_gap": gap, "stable": True})
        return report
    if gap < 0:
        u, v, gap = v, u, -gap
        report.numerics["acts"] = [u.label, v.label]
    min_gap = gap
    for sample in range(n_perturbations):
        moved_u = Act(u.domain, perturbation(rng, dp.ambient_dim, delta) @ u.matrix, u.label)
        moved_v = Act(v.domain, perturbation(rng, dp.ambient_dim, delta) @ v.matrix, v.label)
        moved_gap = (evaluate(strategy, dp, macrostate, psi, moved_u, tol)
                     - evaluate(strategy, dp, macrostate, psi, moved_v, tol))
        min_gap = min(min_gap, moved_gap)
        if moved_gap <= INDIFFERENCE_TOL:
            report.fail({"macrostate": macrostate, "acts": [u.label, v.label], "sample": sample,
                         "perturbed_gap": moved_gap})
    utilities = strategy.utilities_for(dp)
    report.numerics.update({
        "premise": True,
        "min_gap": min_gap,
        "stable": report.passed,
        "gap_condition": gap > 4.0 * delta * max(abs(x) for x in utilities.values()),
    })
    return report


def check_solution_continuity_all(dp: DecisionProblem, strategy: Strategy, rng: np.random.Generator,
                                  n_perturbations: int = 10, delta: float = 1e-3,
                                  tol: Tolerances = DEFAULT_TOLERANCES) -> AxiomReport:
    """Run the continuity check on every strictly ordered pair of listed acts."""
    report = AxiomReport("solution_continuity", strategy.name)
    pairs, gap_ok, min_gap = 0, 0, None
    for label, state in _contexts(dp):
        for u, v in combinations(dp.acts_at(label), 2):
            sub = check_solution_continuity(dp, strategy, label, state, u, v, rng, n_perturbations, delta, tol)
            if not sub.numerics["premise"]:
                continue
            pairs += 1
            gap_ok += int(sub.numerics["gap_condition"])
            min_gap = sub.numerics["min_gap"] if min_gap is None else min(min_gap, sub.numerics["min_gap"])
            for witness in sub.witnesses:
                report.fail({**witness, "gap_condition": sub.numerics["gap_condition"]})
    report.numerics.update({"pairs": pairs, "pairs_meeting_gap_condition": gap_ok,
                            "delta": delta, "min_gap": min_gap})
    return report


# Act Nondegeneracy

def check_act_nondegeneracy(dp: DecisionProblem, strategy: Strategy,
                            tol: Tolerances = DEFAULT_TOLERANCES) -> AxiomReport:
    """Some state somewhere must strictly prefer one listed act to another."""
    report = AxiomReport("act_nondegeneracy", strategy.name, passed=False)
    checked = 0
    for label, state in _contexts(dp):
        order = preference_order(strategy, dp, label, state, tol)
        for a, b in combinations(sorted(order.values), 2):
            checked += 1
            if order.prefers(a, b) or order.prefers(b, a):
                best, worst = (a, b) if order.prefers(a, b) else (b, a)
                report.passed = True
                report.witnesses.append({"macrostate": label, "preferred": best, "over": worst})
                report.numerics["pairs_checked"] = checked
                return report
    report.numerics["pairs_checked"] = checked
    return report

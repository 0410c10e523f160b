"""Richness conditions on act sets, checked rather than enforced."""

from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Optional

import numpy as np

from config.settings import MAX_WITNESSES
from ..events import Member
from ..hilbert import DEFAULT_TOLERANCES, Tolerances, perturbation
from .problem import Act, DecisionProblem, smallest_member

CONDITIONS = ("restriction", "composition", "indolence", "continuation", "irreversibility")


def _labels(member: Member) -> List[str]:
    return sorted(member)


@dataclass
class ConditionResult:
    """Outcome for one condition; `vacuous` counts events that pass only because their act list is empty."""
    passed: bool = True
    checked: int = 0
    vacuous: int = 0
    witnesses: List[Dict[str, Any]] = field(default_factory=list)

    def fail(self, witness: Dict[str, Any], cap: int) -> None:
        self.passed = False
        if len(self.witnesses) < cap:
            self.witnesses.append(witness)


@dataclass
class RichnessReport:
    conditions: Dict[str, ConditionResult]
    identity_everywhere: ConditionResult
    empty_events: List[List[str]]
    n_empty_events: int

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions.values())

    def to_dict(self) -> dict:
        data = asdict(self)
        data["passed"] = self.passed
        return data


def _nonzero_members(dp: DecisionProblem):
    return [m for m in dp.algebra.members() if m]


def _proper_submembers(member: Member):
    labels = sorted(member)
    for size in range(1, len(labels)):
        for combo in combinations(labels, size):
            yield frozenset(combo)


def check_richness(dp: DecisionProblem, tol: Tolerances = DEFAULT_TOLERANCES,
                   max_witnesses: int = MAX_WITNESSES) -> RichnessReport:
    """Check Restriction, Composition, Indolence, Continuation and Irreversibility.

    Irreversibility is read with the {0} correction: for sub-events F, G of E
    with F ^ G = {0}, the smallest events containing U|F and U|G meet in {0}.
    Since both are joins of per-block ranges, checking pairs of blocks suffices.
    """
    results = {name: ConditionResult() for name in CONDITIONS}
    identity = ConditionResult()
    empty: List[List[str]] = []

    for member in _nonzero_members(dp):
        listed = dp.acts_at(member)
        domain = dp.algebra.event(member)

        has_identity = dp.is_available(Act.identity(domain), tol)
        identity.checked += 1
        if not has_identity:
            identity.fail({"event": _labels(member)}, max_witnesses)

        if not listed:
            empty.append(_labels(member))
            for result in results.values():
                result.vacuous += 1
            continue

        results["indolence"].checked += 1
        if not has_identity:
            results["indolence"].fail({"event": _labels(member)}, max_witnesses)

        for act in listed:
            reach = smallest_member(act, dp.algebra, tol)

            for sub in _proper_submembers(member):
                results["restriction"].checked += 1
                if not dp.is_available(act.restrict(dp.algebra.event(sub), tol), tol):
                    results["restriction"].fail(
                        {"event": _labels(member), "sub_event": _labels(sub), "act": act.label}, max_witnesses)

            results["continuation"].checked += 1
            followers = dp.acts_at(reach)
            if not followers:
                results["continuation"].fail(
                    {"event": _labels(member), "act": act.label, "range_event": _labels(reach)}, max_witnesses)
            for after in followers:
                results["composition"].checked += 1
                if not dp.is_available(act.then(after), tol):
                    results["composition"].fail(
                        {"event": _labels(member), "act": act.label, "then": after.label}, max_witnesses)

            atoms = sorted(member)
            reaches = {a: smallest_member(act.restrict(dp.macrostate(a), tol), dp.algebra, tol) for a in atoms}
            for a, b in combinations(atoms, 2):
                results["irreversibility"].checked += 1
                shared = reaches[a] & reaches[b]
                if shared:
                    results["irreversibility"].fail(
                        {"event": _labels(member), "act": act.label, "blocks": [a, b],
                         "shared": _labels(shared)}, max_witnesses)

    return RichnessReport(results, identity, empty[:max_witnesses], len(empty))


@dataclass
class ProblemContinuityReport:
    """Whether small unitary perturbations of listed acts stay available."""
    passed: bool
    delta: float
    samples: int
    events_checked: int
    empty_events: List[List[str]]
    witness: Optional[Dict[str, Any]] = None

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def check_problem_continuity(dp: DecisionProblem, rng: np.random.Generator, delta: float = 1e-3,
                             samples: int = 3, tol: Tolerances = DEFAULT_TOLERANCES,
                             max_witnesses: int = MAX_WITNESSES) -> ProblemContinuityReport:
    """Perturb each listed act by a unitary at distance `delta` and look it up.

    A finite, nonempty act list is never open, so any delta above tol.exact
    yields a witness; empty act lists pass vacuously and are listed.
    """
    empty, checked, witness = [], 0, None
    for member in _nonzero_members(dp):
        listed = dp.acts_at(member)
        if not listed:
            empty.append(_labels(member))
            continue
        checked += 1
        if witness is not None:
            continue
        for act in listed:
            for _ in range(samples):
                w = perturbation(rng, dp.ambient_dim, delta)
                moved = Act(act.domain, w @ act.matrix, f"{act.label}~")
                if not dp.is_available(moved, tol):
                    witness = {"event": _labels(member), "act": act.label, "delta": delta}
                    break
            if witness is not None:
                break
    return ProblemContinuityReport(witness is None, delta, samples, checked, empty[:max_witnesses], witness)

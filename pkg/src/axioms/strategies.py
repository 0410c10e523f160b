"""Valuation strategies and the preference orders they induce."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..decision import Act, DecisionProblem
from ..errors import InvalidPartition, StateOutsideDomain, ZeroVector
from ..hilbert import DEFAULT_TOLERANCES, Tolerances, as_array

INDIFFERENCE_TOL = 1e-9


class StrategyKind(str, Enum):
    """How an agent turns a post-act state into a value."""
    BORN_EU = "born_eu"
    COUNTING_EU = "counting_eu"
    COARSE_COUNT_EU = "coarse_count_eu"
    MINIMAX = "minimax"
    PROCESS_COST = "process_cost"


@dataclass(frozen=True)
class Strategy:
    """A valuation rule plus its parameters.

    `grains` lists groupings of macrostates into cells for coarse_count_eu;
    `act_costs` charges process_cost agents per act label.
    """
    kind: StrategyKind
    utilities: Optional[Dict[str, float]] = None
    threshold: float = 1e-6
    grains: Tuple[Dict[str, Tuple[str, ...]], ...] = ()
    act_costs: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "kind", StrategyKind(self.kind))
        if self.threshold <= 0.0:
            raise ValueError("counting threshold must be positive")

    @property
    def name(self) -> str:
        return self.kind.value

    def utilities_for(self, dp: DecisionProblem) -> Dict[str, float]:
        utilities = self.utilities if self.utilities is not None else dp.utilities
        if utilities is None:
            raise ValueError("no utilities given for the strategy or the decision problem")
        missing = set(dp.rewards.labels) - set(utilities)
        if missing:
            raise ValueError(f"utilities missing for rewards {sorted(missing)}")
        return {r: float(utilities[r]) for r in dp.rewards.labels}


def _counted(dp: DecisionProblem, image: np.ndarray, scale: float, threshold: float) -> List[str]:
    """Macrostates whose relative amplitude norm exceeds the threshold."""
    return [
        label for label, block in zip(dp.macrostates.labels, dp.macrostates.blocks)
        if np.linalg.norm(block.coordinates(image)) / scale > threshold
    ]


def _grain_value(dp: DecisionProblem, image: np.ndarray, scale: float, threshold: float,
                 grain: Mapping[str, Sequence[str]], utilities: Dict[str, float]) -> float:
    total, count = 0.0, 0
    for cell, members in grain.items():
        rewards = {dp.reward_of[m] for m in members}
        if len(rewards) != 1:
            raise InvalidPartition(f"grain cell '{cell}' straddles rewards {sorted(rewards)}")
        amplitude = np.sqrt(sum(np.linalg.norm(dp.macrostate(m).coordinates(image)) ** 2 for m in members))
        if amplitude / scale > threshold:
            total += utilities[rewards.pop()]
            count += 1
    return total / count if count else 0.0


def value_of_outcome(strategy: Strategy, dp: DecisionProblem, image: np.ndarray, scale: float,
                     act_label: str = "") -> float:
    """Value of the post-act state `image` produced from a state of norm `scale`."""
    utilities = strategy.utilities_for(dp)
    kind = strategy.kind
    if kind in (StrategyKind.BORN_EU, StrategyKind.PROCESS_COST):
        weights = dp.reward_weights(image)
        value = sum(weights[r] * utilities[r] for r in utilities) / scale ** 2
        if kind is StrategyKind.PROCESS_COST:
            value -= sum(strategy.act_costs.get(part, 0.0) for part in act_label.split("."))
        return float(value)
    if kind is StrategyKind.COARSE_COUNT_EU:
        grains = strategy.grains or ({r: dp.reward_members(r) for r in dp.rewards.labels},)
        return float(np.mean([_grain_value(dp, image, scale, strategy.threshold, g, utilities) for g in grains]))
    counted = [utilities[dp.reward_of[m]] for m in _counted(dp, image, scale, strategy.threshold)]
    if not counted:
        return 0.0
    if kind is StrategyKind.COUNTING_EU:
        return float(np.mean(counted))
    return float(min(counted))


def evaluate(strategy: Strategy, dp: DecisionProblem, macrostate: str, state, act: Act,
             tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Value of performing `act` on `state`, which must lie in `macrostate` and in the act's domain."""
    psi = as_array(state)
    scale = float(np.linalg.norm(psi))
    if scale == 0.0:
        raise ZeroVector("cannot evaluate an act on the zero state")
    if not dp.macrostate(macrostate).contains_vector(psi, tol):
        raise StateOutsideDomain(f"state does not lie in macrostate '{macrostate}'")
    if not act.domain.contains_vector(psi, tol):
        raise StateOutsideDomain(f"state does not lie in the domain of act '{act.label}'")
    return value_of_outcome(strategy, dp, act.apply(psi), scale, act.label)


@dataclass
class PreferenceOrder:
    """Preferences over acts at (macrostate, state), given by a value per act label."""
    macrostate: str
    state: np.ndarray
    values: Dict[str, float]
    tolerance: float = INDIFFERENCE_TOL

    def prefers(self, a: str, b: str) -> bool:
        return self.values[a] > self.values[b] + self.tolerance

    def indifferent(self, a: str, b: str) -> bool:
        return abs(self.values[a] - self.values[b]) <= self.tolerance

    def weakly_prefers(self, a: str, b: str) -> bool:
        return self.prefers(a, b) or self.indifferent(a, b)

    def ranking(self) -> List[str]:
        """Labels from best to worst, ties in label order."""
        return sorted(self.values, key=lambda label: (-self.values[label], label))

    def relation(self) -> List[Tuple[str, str]]:
        """The weak-preference pairs (a, b) meaning a is at least as good as b."""
        labels = sorted(self.values)
        return [(a, b) for a in labels for b in labels if self.weakly_prefers(a, b)]


def preference_order(strategy: Strategy, dp: DecisionProblem, macrostate: str, state,
                     tol: Tolerances = DEFAULT_TOLERANCES) -> PreferenceOrder:
    """Order the acts available at a macrostate by their value on `state`."""
    psi = as_array(state)
    values = {act.label: evaluate(strategy, dp, macrostate, psi, act, tol) for act in dp.acts_at(macrostate)}
    return PreferenceOrder(macrostate, psi, values)


def compare(a: float, b: float, tolerance: float = INDIFFERENCE_TOL) -> int:
    """1 if a is strictly better, -1 if strictly worse, 0 if indifferent."""
    if a > b + tolerance:
        return 1
    if b > a + tolerance:
        return -1
    return 0

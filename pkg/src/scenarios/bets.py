"""Betting problems on a spin measured up or down, with cash payoff registers."""

from typing import Dict, List

import numpy as np

from ..axioms import BranchingContext, Continuation, DiachronicScenario
from ..decision import Act, DecisionProblem, IDENTITY_LABEL
from ..events import Partition
from .bundle import ScenarioBundle

ABC_MACROSTATES = (
    "ready",
    "up+1000",
    "down0",
    "down-up+1000",
    "down-down-100",
    "down-100",
    "down-up0",
    "down-down0",
)
ABC_REWARDS = {
    "+1000": ["up+1000", "down-up+1000"],
    "0": ["ready", "down0", "down-up0", "down-down0"],
    "-100": ["down-down-100", "down-100"],
}
ABC_UTILITIES = {"+1000": 1000.0, "0": 0.0, "-100": -100.0}


def _image(macrostates: Partition, amplitudes: Dict[str, complex]) -> np.ndarray:
    vector = np.zeros(macrostates.ambient_dim, dtype=complex)
    for label, amplitude in amplitudes.items():
        vector += amplitude * macrostates.block(label).frame[:, 0]
    return vector


def _line_act(macrostates: Partition, source: str, amplitudes: Dict[str, complex], label: str) -> Act:
    """Act on a rank-1 macrostate sending its frame vector to the given superposition."""
    return Act(macrostates.block(source), _image(macrostates, amplitudes)[:, np.newaxis], label)


def _identities(macrostates: Partition) -> Dict[str, List[Act]]:
    return {label: [Act.identity(block)] for label, block in zip(macrostates.labels, macrostates.blocks)}


def _abc_acts(macrostates: Partition) -> Dict[str, List[Act]]:
    r = 1.0 / np.sqrt(2.0)
    acts = _identities(macrostates)
    acts["ready"] += [
        _line_act(macrostates, "ready", {"up+1000": r, "down-100": r}, "A"),
        _line_act(macrostates, "ready", {"up+1000": r, "down0": r}, "B"),
        _line_act(macrostates, "ready", {"up+1000": r, "down-up+1000": 0.5, "down-down-100": 0.5}, "C"),
    ]
    acts["down0"].append(_line_act(macrostates, "down0", {"down-up+1000": r, "down-down-100": r}, "A_down"))
    return acts


def _abc_scenarios(macrostates: Partition):
    ready = macrostates.block("ready").frame[:, 0]
    diachronic = DiachronicScenario(
        "ready", ready, "B", ["up+1000", "down0"],
        [(Continuation("A_down", {"down0": "A_down"}), Continuation(IDENTITY_LABEL, {}))],
    )
    return ready, diachronic, BranchingContext("ready", ready, "B")


def build_abc_bets() -> ScenarioBundle:
    """Bets on a spin with equal weights for up and down.

    A pays +1000 on up and -100 on down; B pays +1000 on up and nothing on
    down; C is B followed, on the down branch only, by A on a fresh spin.
    """
    macrostates = Partition.from_basis_groups(8, {label: [i] for i, label in enumerate(ABC_MACROSTATES)})
    dp = DecisionProblem.create(macrostates, ABC_REWARDS, _abc_acts(macrostates), ABC_UTILITIES)
    ready, diachronic, context = _abc_scenarios(macrostates)
    return ScenarioBundle("abc-bets", decision_problem=dp, diachronic=[diachronic], contexts=[context], state=ready)


def build_branching_indifference_composite() -> ScenarioBundle:
    """The bets problem plus W, a split of the down branch into two
    macrostates of the same reward.

    W changes nothing any reward cares about, yet agents who count branches
    value B followed by W below B.
    """
    macrostates = Partition.from_basis_groups(8, {label: [i] for i, label in enumerate(ABC_MACROSTATES)})
    acts = _abc_acts(macrostates)
    r = 1.0 / np.sqrt(2.0)
    acts["down0"].append(_line_act(macrostates, "down0", {"down-up0": r, "down-down0": r}, "W"))
    dp = DecisionProblem.create(macrostates, ABC_REWARDS, acts, ABC_UTILITIES)
    ready, diachronic, context = _abc_scenarios(macrostates)
    diachronic.pairs.append((Continuation("W", {"down0": "W"}), Continuation(IDENTITY_LABEL, {})))
    return ScenarioBundle("branching-composite", decision_problem=dp, diachronic=[diachronic],
                          contexts=[context], state=ready)


IMPRECISE_REWARDS = {"+1000": ["up"], "0": ["ready"], "-1000000": ["down"]}
IMPRECISE_UTILITIES = {"+1000": 1000.0, "0": 0.0, "-1000000": -1000000.0}


def build_imprecise_bet(epsilon: float = 1e-6) -> ScenarioBundle:
    """A spin prepared up, paying +1000 on up and -1000000 on down.

    "bet" measures the spin exactly; "bet_eps" is the same act prepared with
    error epsilon, leaving a down branch of weight epsilon.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must lie in [0, 1]")
    macrostates = Partition.from_basis_groups(3, {"ready": [0], "up": [1], "down": [2]})
    acts = _identities(macrostates)
    acts["ready"] += [
        _line_act(macrostates, "ready", {"up": 1.0}, "bet"),
        _line_act(macrostates, "ready", {"up": np.sqrt(1.0 - epsilon), "down": np.sqrt(epsilon)}, "bet_eps"),
    ]
    dp = DecisionProblem.create(macrostates, IMPRECISE_REWARDS, acts, IMPRECISE_UTILITIES)
    return ScenarioBundle("imprecise-bet", decision_problem=dp, state=macrostates.block("ready").frame[:, 0])

"""Instances where the availability axioms cannot all hold."""

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ..decision import (
    Act,
    DecisionProblem,
    ErasurePair,
    InfeasibleByDimension,
    compatible_lift,
    erasure_pair,
    reward_act_search,
    send_state,
)
from ..events import Partition
from .bundle import ScenarioBundle


def erasure_problem() -> DecisionProblem:
    """Three rank-1 macrostates M, N, E sharing one reward."""
    macrostates = Partition.from_basis_groups(3, {"M": [0], "N": [1], "E": [2]})
    acts = {label: [Act.identity(block)] for label, block in zip(macrostates.labels, macrostates.blocks)}
    return DecisionProblem.create(macrostates, {"r": ["M", "N", "E"]}, acts, {"r": 0.0})


@dataclass
class ErasureOutcome:
    bundle: ScenarioBundle
    pair: ErasurePair


def build_erasure_contradiction(offset: float = 0.0, distinct_targets: bool = False) -> ErasureOutcome:
    """Erase the records of M and N by sending e0 and e1 to one vector.

    `offset` tilts V's target by that angle towards e1; `distinct_targets`
    sends phi to e0 instead, so the two ranges are orthogonal and the lift exists.
    """
    dp = erasure_problem()
    psi, phi = np.eye(3, dtype=complex)[0], np.eye(3, dtype=complex)[1]
    pair = erasure_pair(dp, "M", "N", psi, phi)
    if offset or distinct_targets:
        if distinct_targets:
            target = np.eye(3, dtype=complex)[0]
        else:
            target = np.cos(offset) * pair.target + np.sin(offset) * phi
        v = send_state(dp.macrostate("N"), phi, target, dp.reward("r"), "erase:N")
        pair = ErasurePair(pair.u, v, pair.target, compatible_lift(pair.u, v))
    dp = dp.with_acts({"M": [pair.u], "N": [pair.v]})
    return ErasureOutcome(ScenarioBundle("erasure", decision_problem=dp, state=psi), pair)


REWARD_BLOCKS = {"M1": [0, 1], "M2": [2, 3], "M3": [4, 5], "M4": [6, 7]}


@dataclass
class RewardAvailabilityOutcome:
    bundle: ScenarioBundle
    result: Union[Act, InfeasibleByDimension]


def build_reward_availability_contradiction(single_reward: bool = False,
                                            target: Optional[str] = None) -> RewardAvailabilityOutcome:
    """Send all four rank-2 macrostates of an 8-dim space into one reward.

    With two rewards of rank 4 the ledger is (8, 4) and the search fails;
    with a single reward spanning the space it succeeds.
    """
    macrostates = Partition.from_basis_groups(8, REWARD_BLOCKS)
    groups = {"all": list(REWARD_BLOCKS)} if single_reward else {"low": ["M1", "M2"], "high": ["M3", "M4"]}
    acts = {label: [Act.identity(block)] for label, block in zip(macrostates.labels, macrostates.blocks)}
    utilities = {r: float(i) for i, r in enumerate(groups)}
    dp = DecisionProblem.create(macrostates, groups, acts, utilities)
    reward = target or next(iter(groups))
    result = reward_act_search(dp, list(REWARD_BLOCKS), [reward] * len(REWARD_BLOCKS))
    return RewardAvailabilityOutcome(ScenarioBundle("reward-availability", decision_problem=dp), result)

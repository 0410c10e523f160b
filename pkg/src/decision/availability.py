"""Constructions behind the availability axioms: compatible lifts, reward acts,
branching acts and erasures."""

from dataclasses import asdict, dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Union

import numpy as np

from ..errors import (
    InsufficientDimension,
    InvalidPartition,
    NoRoomInReward,
    NormMismatch,
    StateOutsideDomain,
    TargetsOutsideReward,
    ZeroVector,
)
from ..hilbert import DEFAULT_TOLERANCES, Event, Tolerances, as_array, complete_columns, is_orthogonal, op_norm
from .problem import Act, DecisionProblem


@dataclass
class LiftInfeasible:
    """No unitary on the join agrees with both acts; `defect` is ||U1^dagger U2||."""
    defect: float
    acts: List[str]

    def to_dict(self) -> dict:
        return asdict(self)


def compatible_lift(u1: Act, u2: Act, tol: Tolerances = DEFAULT_TOLERANCES,
                    label: Optional[str] = None) -> Union[Act, LiftInfeasible]:
    """Direct sum of two acts on orthogonal domains, if their ranges are orthogonal."""
    if not is_orthogonal(u1.domain, u2.domain, tol):
        raise InvalidPartition(f"domains of '{u1.label}' and '{u2.label}' are not orthogonal")
    defect = op_norm(u1.matrix.conj().T @ u2.matrix)
    if defect > tol.exact:
        return LiftInfeasible(defect, [u1.label, u2.label])
    domain = Event(u1.ambient_dim, np.hstack([u1.domain.frame, u2.domain.frame]))
    return Act(domain, np.hstack([u1.matrix, u2.matrix]), label or f"{u1.label}+{u2.label}")


@dataclass
class InfeasibleByDimension:
    """Sources sent to `reward` need `needed` dimensions but it has only `available`."""
    reward: str
    needed: int
    available: int
    ledger: Dict[str, List[int]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def dimension_ledger(dp: DecisionProblem, sources: Sequence[str], targets: Sequence[str]) -> Dict[str, List[int]]:
    """reward -> [dimensions needed, rank of the reward]."""
    ledger = {r: [0, dp.reward(r).rank] for r in dict.fromkeys(targets)}
    for m, r in zip(sources, targets):
        ledger[r][0] += dp.macrostate(m).rank
    return ledger


def reward_act_search(dp: DecisionProblem, sources: Sequence[str], targets: Sequence[str],
                      label: str = "reward") -> Union[Act, InfeasibleByDimension]:
    """An act on the join of the sources sending each source M_i into reward r_i.

    Frame columns of each reward are handed out in order; infeasibility is
    exactly a reward whose rank is below the total rank sent into it.
    """
    if len(sources) != len(targets) or not sources:
        raise ValueError("need one target reward per source macrostate")
    if len(set(sources)) != len(sources):
        raise InvalidPartition("source macrostates must be distinct")
    ledger = dimension_ledger(dp, sources, targets)
    for reward, (needed, available) in ledger.items():
        if needed > available:
            return InfeasibleByDimension(reward, needed, available, ledger)
    cursor = {r: 0 for r in ledger}
    frames, images = [], []
    for m, r in zip(sources, targets):
        block = dp.macrostate(m)
        start = cursor[r]
        cursor[r] += block.rank
        frames.append(block.frame)
        images.append(dp.reward(r).frame[:, start:cursor[r]])
    return Act(Event(dp.ambient_dim, np.hstack(frames)), np.hstack(images), label)


@dataclass
class BranchSource:
    """One source macrostate, the state prepared in it, and how it should branch."""
    macrostate: str
    state: np.ndarray
    targets: Dict[str, float]
    reward: Optional[str] = None


@dataclass
class BranchingActSpec:
    sources: List[BranchSource]


def branching_act(dp: DecisionProblem, spec: BranchingActSpec, tol: Tolerances = DEFAULT_TOLERANCES,
                  label: str = "branch") -> Act:
    """Build U with U psi_i = ||psi_i|| sum_j sqrt(p_ij) n_ij, n_ij a unit vector of N_ij.

    The rest of each source macrostate is sent to unused directions of the
    same target macrostates, so the range of U restricted to M_i stays in r_i.
    """
    used: Dict[str, int] = {}
    frames, blocks = [], []
    for source in spec.sources:
        block = dp.macrostate(source.macrostate)
        psi = as_array(source.state)
        norm = float(np.linalg.norm(psi))
        if norm == 0.0:
            raise ZeroVector(f"state prepared in '{source.macrostate}' is zero")
        if not block.contains_vector(psi, tol):
            raise StateOutsideDomain(f"state does not lie in '{source.macrostate}'")
        weights = {n: float(p) for n, p in source.targets.items()}
        if any(p <= 0.0 for p in weights.values()) or abs(sum(weights.values()) - 1.0) > tol.exact:
            raise ValueError("branch weights must be positive and sum to 1")
        reward = source.reward or dp.reward_of[source.macrostate]
        outside = sorted(n for n in weights if dp.reward_of[n] != reward)
        if outside:
            raise TargetsOutsideReward(
                f"targets {outside} are not in reward '{reward}'", {"targets": outside, "reward": reward})

        columns, branch = [], np.zeros(dp.ambient_dim, dtype=complex)
        for n, p in weights.items():
            frame = dp.macrostate(n).frame
            if used.get(n, 0) >= frame.shape[1]:
                raise InsufficientDimension(f"macrostate '{n}' has no free dimension left", {"macrostate": n})
            index = used.get(n, 0)
            column = frame[:, index]
            used[n] = index + 1
            columns.append(column)
            branch += np.sqrt(p) * column
        for n in weights:
            frame = dp.macrostate(n).frame
            while len(columns) < block.rank and used[n] < frame.shape[1]:
                columns.append(frame[:, used[n]])
                used[n] += 1
        if len(columns) < block.rank:
            raise InsufficientDimension(
                f"targets of '{source.macrostate}' have {len(columns)} free dimensions, need {block.rank}",
                {"macrostate": source.macrostate, "needed": block.rank, "available": len(columns)},
            )
        images = complete_columns(branch, np.column_stack(columns))[:, :block.rank]
        domain_side = complete_columns(block.coordinates(psi) / norm)
        frames.append(block.frame)
        blocks.append(images @ domain_side.conj().T)
    return Act(Event(dp.ambient_dim, np.hstack(frames)), np.hstack(blocks), label)


def branch_weights(dp: DecisionProblem, act: Act, state) -> Dict[str, float]:
    """||Pi_N U psi||^2 / ||psi||^2 for every macrostate N, zero entries dropped."""
    psi = as_array(state)
    image = act.apply(psi)
    total = float(np.linalg.norm(psi) ** 2)
    return {n: w / total for n, w in dp.macrostate_weights(image).items() if w > 0.0}


@dataclass
class ErasurePair:
    """Acts on M and N sending psi and phi to the same vector, and their lift attempt."""
    u: Act
    v: Act
    target: np.ndarray
    lift: Union[Act, LiftInfeasible]

    def to_dict(self) -> dict:
        lift = self.lift.to_dict() if isinstance(self.lift, LiftInfeasible) else {"act": self.lift.label}
        return {"u": self.u.label, "v": self.v.label, "lift": lift}


def erasure_target(dp: DecisionProblem, reward: str, erased: Sequence[str]) -> np.ndarray:
    """First frame column of the lowest-labelled macrostate of the reward
    not being erased, or of the lowest-labelled one if all are."""
    members = sorted(m for m in dp.macrostates.labels if dp.reward_of[m] == reward)
    others = [m for m in members if m not in erased]
    return dp.macrostate((others or members)[0]).frame[:, 0]


def send_state(block: Event, state: np.ndarray, target: np.ndarray, reward: Event, label: str) -> Act:
    """Act on `block` mapping the unit direction of `state` to `target`, inside `reward`."""
    images = complete_columns(target, reward.frame)[:, :block.rank]
    coords = block.coordinates(state)
    return Act(block, images @ complete_columns(coords / np.linalg.norm(coords)).conj().T, label)


def erasure_pair(dp: DecisionProblem, m: str, n: str, psi, phi,
                 tol: Tolerances = DEFAULT_TOLERANCES) -> ErasurePair:
    """Acts U on M and V on N with U psi = V phi, then the lift of U and V to M v N."""
    psi, phi = as_array(psi), as_array(phi)
    block_m, block_n = dp.macrostate(m), dp.macrostate(n)
    for label, block, state in ((m, block_m, psi), (n, block_n, phi)):
        if np.linalg.norm(state) == 0.0:
            raise ZeroVector(f"state in '{label}' is zero")
        if not block.contains_vector(state, tol):
            raise StateOutsideDomain(f"state does not lie in '{label}'")
    norm_psi, norm_phi = float(np.linalg.norm(psi)), float(np.linalg.norm(phi))
    if abs(norm_psi - norm_phi) > tol.exact:
        raise NormMismatch(
            f"erased states have norms {norm_psi:.6g} and {norm_phi:.6g}",
            {"norms": [norm_psi, norm_phi]},
        )
    reward = dp.reward_of[m]
    if dp.reward_of[n] != reward:
        raise TargetsOutsideReward(f"'{m}' and '{n}' lie in different rewards")
    reward_block = dp.reward(reward)
    if reward_block.rank < max(block_m.rank, block_n.rank):
        raise NoRoomInReward(f"reward '{reward}' has rank {reward_block.rank}, too small to host the erasure")
    target = erasure_target(dp, reward, [m, n])
    u = send_state(block_m, psi, target, reward_block, f"erase:{m}")
    v = send_state(block_n, phi, target, reward_block, f"erase:{n}")
    return ErasurePair(u, v, target * norm_psi, compatible_lift(u, v, tol))

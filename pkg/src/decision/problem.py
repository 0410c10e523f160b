"""Acts, decision problems, and the smallest event containing an act's range."""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..errors import DimensionMismatch, InvalidPartition, StateOutsideDomain
from ..events import EventAlgebra, Member, Partition, algebra_from_partition
from ..hilbert import (
    DEFAULT_TOLERANCES,
    Event,
    Tolerances,
    as_array,
    is_contained,
    isometry_defect,
    op_norm,
    same_event,
)

IDENTITY_LABEL = "1"


@dataclass(frozen=True)
class Act:
    """An isometry from the event `domain` into the ambient space.

    `matrix` is ambient_dim x rank(domain): it takes frame coordinates of the
    domain to ambient vectors.
    """
    domain: Event
    matrix: np.ndarray
    label: str

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex).reshape(self.domain.ambient_dim, self.domain.rank)
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)

    @property
    def ambient_dim(self) -> int:
        return self.domain.ambient_dim

    @property
    def operator(self) -> np.ndarray:
        """Ambient matrix: the act on its domain, zero on the complement."""
        return self.matrix @ self.domain.frame.conj().T

    def apply(self, vector) -> np.ndarray:
        return self.operator @ as_array(vector)

    def defect(self) -> float:
        return isometry_defect(self.matrix) if self.domain.rank else 0.0

    @classmethod
    def identity(cls, domain: Event, label: str = IDENTITY_LABEL) -> "Act":
        return cls(domain, domain.frame, label)

    @classmethod
    def from_operator(cls, domain: Event, operator: np.ndarray, label: str) -> "Act":
        """Restrict an ambient operator to `domain`."""
        return cls(domain, np.asarray(operator, dtype=complex) @ domain.frame, label)

    def restrict(self, sub: Event, tol: Tolerances = DEFAULT_TOLERANCES) -> "Act":
        if not is_contained(sub, self.domain, tol):
            raise StateOutsideDomain(f"cannot restrict '{self.label}' outside its domain")
        return Act(sub, self.operator @ sub.frame, self.label)

    def then(self, after: "Act") -> "Act":
        """The composite `after` o `self`, defined on self's domain."""
        return Act(self.domain, after.operator @ self.matrix, f"{after.label}.{self.label}")


def same_act(a: Act, b: Act, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    return same_event(a.domain, b.domain, tol) and op_norm(a.operator - b.operator) <= tol.exact


def _member(labels: Iterable[str]) -> Member:
    return frozenset(labels)


@dataclass(frozen=True)
class DecisionProblem:
    """Macrostates, the rewards they coarse-grain into, and explicit act lists per event."""
    macrostates: Partition
    rewards: Partition
    reward_of: Dict[str, str]
    algebra: EventAlgebra
    acts: Dict[Member, Tuple[Act, ...]]
    utilities: Optional[Dict[str, float]] = None
    states: Dict[str, Tuple[np.ndarray, ...]] = field(default_factory=dict)

    @classmethod
    def create(cls, macrostates: Partition, reward_groups: Mapping[str, Sequence[str]],
               acts: Mapping[Iterable[str], Sequence[Act]],
               utilities: Optional[Mapping[str, float]] = None,
               states: Optional[Mapping[str, Sequence]] = None,
               tol: Tolerances = DEFAULT_TOLERANCES) -> "DecisionProblem":
        """Validate and build.

        `reward_groups` maps each reward to the macrostates it is the join of;
        every macrostate belongs to exactly one reward.
        """
        reward_of: Dict[str, str] = {}
        for reward, members in reward_groups.items():
            for m in members:
                if m in reward_of:
                    raise InvalidPartition(f"macrostate '{m}' lies in two rewards")
                reward_of[m] = reward
        missing = set(macrostates.labels) - set(reward_of)
        if missing:
            raise InvalidPartition("every macrostate needs a reward", {"missing": sorted(missing)})
        rewards = macrostates.coarsen(reward_groups, tol)
        algebra = algebra_from_partition(macrostates)

        table: Dict[Member, Tuple[Act, ...]] = {}
        for labels, listed in acts.items():
            member = _member([labels] if isinstance(labels, str) else labels)
            domain = algebra.event(member)
            for act in listed:
                if act.ambient_dim != macrostates.ambient_dim:
                    raise DimensionMismatch(f"act '{act.label}' lives in a different space")
                if not same_event(act.domain, domain, tol):
                    raise InvalidPartition(f"act '{act.label}' is not defined on {sorted(member)}")
                if act.defect() > tol.exact:
                    raise ValueError(f"act '{act.label}' is not an isometry (defect {act.defect():.3e})")
            table[member] = table.get(member, ()) + tuple(listed)

        if utilities is not None:
            unknown = set(rewards.labels) - set(utilities)
            if unknown:
                raise ValueError(f"utilities missing for rewards {sorted(unknown)}")
            utilities = {r: float(utilities[r]) for r in rewards.labels}

        checked_states: Dict[str, Tuple[np.ndarray, ...]] = {}
        for label, vectors in (states or {}).items():
            block = macrostates.block(label)
            arrays = tuple(as_array(v) for v in vectors)
            for v in arrays:
                if not block.contains_vector(v, tol) or np.linalg.norm(v) == 0.0:
                    raise StateOutsideDomain(f"a state listed for '{label}' is zero or lies outside it")
            checked_states[label] = arrays

        return cls(macrostates, rewards, reward_of, algebra, table,
                   dict(utilities) if utilities is not None else None, checked_states)

    @property
    def ambient_dim(self) -> int:
        return self.macrostates.ambient_dim

    def macrostate(self, label: str) -> Event:
        return self.macrostates.block(label)

    def reward(self, label: str) -> Event:
        return self.rewards.block(label)

    def reward_members(self, reward: str) -> Tuple[str, ...]:
        return tuple(m for m in self.macrostates.labels if self.reward_of[m] == reward)

    def acts_at(self, labels: Iterable[str]) -> Tuple[Act, ...]:
        return self.acts.get(_member([labels] if isinstance(labels, str) else labels), ())

    def find_act(self, labels: Iterable[str], act_label: str) -> Act:
        for act in self.acts_at(labels):
            if act.label == act_label:
                return act
        raise KeyError(f"no act '{act_label}' at {sorted(_member([labels] if isinstance(labels, str) else labels))}")

    def is_available(self, act: Act, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
        member = self.algebra.contains(act.domain, tol)
        if member is None:
            return False
        return any(op_norm(act.operator - listed.operator) <= tol.exact for listed in self.acts_at(member))

    def with_acts(self, extra: Mapping[Iterable[str], Sequence[Act]]) -> "DecisionProblem":
        """Copy with further acts appended to the given events (no re-validation)."""
        table = dict(self.acts)
        for labels, listed in extra.items():
            member = _member([labels] if isinstance(labels, str) else labels)
            table[member] = table.get(member, ()) + tuple(listed)
        return DecisionProblem(self.macrostates, self.rewards, self.reward_of, self.algebra,
                               table, self.utilities, self.states)

    def reward_weights(self, vector) -> Dict[str, float]:
        """Squared norms of the projections of a vector onto each reward."""
        v = as_array(vector)
        return {label: float(np.linalg.norm(block.coordinates(v)) ** 2)
                for label, block in zip(self.rewards.labels, self.rewards.blocks)}

    def macrostate_weights(self, vector) -> Dict[str, float]:
        v = as_array(vector)
        return {label: float(np.linalg.norm(block.coordinates(v)) ** 2)
                for label, block in zip(self.macrostates.labels, self.macrostates.blocks)}


def smallest_member(act: Act, alg: EventAlgebra, tol: Tolerances = DEFAULT_TOLERANCES) -> Member:
    """Labels of the blocks M with ||Pi_M U|| > tol.exact."""
    return alg.smallest_containing(act.matrix, tol)


def smallest_event(act: Act, alg: EventAlgebra, tol: Tolerances = DEFAULT_TOLERANCES) -> Event:
    """The smallest event of `alg` containing the range of the act."""
    return alg.event(smallest_member(act, alg, tol))

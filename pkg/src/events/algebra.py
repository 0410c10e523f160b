"""Boolean event algebras generated by an orthogonal partition.

Members are held as frozensets of block labels; the matrix form of a member is
only built on request.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterator, Optional

import numpy as np

from ..errors import DimensionMismatch
from ..hilbert import (
    DEFAULT_TOLERANCES,
    Event,
    Tolerances,
    is_contained,
    is_orthogonal,
    meet,
    op_norm,
)
from .partition import Partition

Member = FrozenSet[str]


@dataclass(frozen=True)
class EventAlgebra:
    """All joins of blocks of a generating partition."""
    generators: Partition

    @property
    def ambient_dim(self) -> int:
        return self.generators.ambient_dim

    @property
    def labels(self):
        return self.generators.labels

    @property
    def size(self) -> int:
        return 2 ** len(self.generators)

    @property
    def top(self) -> Member:
        return frozenset(self.labels)

    @property
    def bottom(self) -> Member:
        return frozenset()

    def atoms(self) -> list:
        return [frozenset([label]) for label in self.labels]

    def members(self) -> Iterator[Member]:
        """Every member, smallest first, in label order within a size."""
        for size in range(len(self.labels) + 1):
            for combo in combinations(self.labels, size):
                yield frozenset(combo)

    def event(self, member) -> Event:
        """Matrix form of a member."""
        labels = [l for l in self.labels if l in set(member)]
        unknown = set(member) - set(self.labels)
        if unknown:
            raise KeyError(f"unknown labels {sorted(unknown)}")
        if not labels:
            return Event.zero(self.ambient_dim)
        return Event(self.ambient_dim, np.hstack([self.generators.block(l).frame for l in labels]))

    def meet(self, a: Member, b: Member) -> Member:
        return frozenset(a) & frozenset(b)

    def join(self, a: Member, b: Member) -> Member:
        return frozenset(a) | frozenset(b)

    def complement(self, a: Member) -> Member:
        return self.top - frozenset(a)

    def rank(self, member: Member) -> int:
        return sum(self.generators.block(l).rank for l in member)

    def contains(self, event: Event, tol: Tolerances = DEFAULT_TOLERANCES) -> Optional[Member]:
        """The member equal to `event`, or None when the event is not a join of blocks."""
        if event.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("event lives in a different space")
        chosen = []
        for label, block in zip(self.labels, self.generators.blocks):
            if is_contained(block, event, tol):
                chosen.append(label)
            elif not is_orthogonal(block, event, tol):
                return None
        member = frozenset(chosen)
        return member if self.rank(member) == event.rank else None

    def smallest_containing(self, columns: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> Member:
        """Smallest member containing the span of the columns: every block
        on which the columns have a projection larger than tol.exact."""
        columns = np.asarray(columns, dtype=complex).reshape(self.ambient_dim, -1)
        return frozenset(
            label for label, block in zip(self.labels, self.generators.blocks)
            if op_norm(block.frame.conj().T @ columns) > tol.exact
        )


def algebra_from_partition(p: Partition) -> EventAlgebra:
    return EventAlgebra(p)


def orthogonality_condition_holds(e: Event, f: Event, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """Zero conjunction is equivalent to orthogonality for this pair."""
    return meet(e, f, tol).is_zero == is_orthogonal(e, f, tol)


def is_atomic_generated(alg: EventAlgebra) -> bool:
    """Every generator is a minimal nonzero member.

    Members are joins of generators, so a nonzero generator has no nonzero
    proper sub-member; at finite dimension this always holds.
    """
    return all(not block.is_zero for block in alg.generators.blocks)

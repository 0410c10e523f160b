"""Orthogonal partitions of the ambient space and refinement between them."""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from ..errors import DimensionMismatch, InvalidPartition, NonCommuting
from ..hilbert import (
    DEFAULT_TOLERANCES,
    Event,
    Tolerances,
    event_from_frame,
    is_contained,
    is_orthogonal,
    meet,
)


@dataclass(frozen=True)
class Partition:
    """Mutually orthogonal, nonzero, labelled blocks whose join is the whole space."""
    ambient_dim: int
    blocks: Tuple[Event, ...]
    labels: Tuple[str, ...]

    @classmethod
    def create(cls, labels: Sequence[str], blocks: Sequence[Event],
               tol: Tolerances = DEFAULT_TOLERANCES) -> "Partition":
        """Build and validate a partition."""
        if len(labels) != len(blocks) or not blocks:
            raise InvalidPartition("need one label per block and at least one block")
        if len(set(labels)) != len(labels):
            raise InvalidPartition("labels must be unique", {"labels": list(labels)})
        dims = {b.ambient_dim for b in blocks}
        if len(dims) != 1:
            raise DimensionMismatch("blocks live in different spaces", {"dims": sorted(dims)})
        dim = dims.pop()
        for label, block in zip(labels, blocks):
            if block.is_zero:
                raise InvalidPartition(f"block '{label}' is the zero subspace")
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                if not is_orthogonal(blocks[i], blocks[j], tol):
                    raise InvalidPartition(
                        f"blocks '{labels[i]}' and '{labels[j]}' overlap",
                        {"pair": [labels[i], labels[j]]},
                    )
        total = sum(b.rank for b in blocks)
        if total != dim:
            raise InvalidPartition(f"ranks add up to {total}, not {dim}", {"rank_sum": total, "dim": dim})
        return cls(dim, tuple(blocks), tuple(labels))

    @classmethod
    def from_frames(cls, frames: Mapping[str, np.ndarray],
                    tol: Tolerances = DEFAULT_TOLERANCES) -> "Partition":
        labels = list(frames)
        return cls.create(labels, [event_from_frame(frames[l], tol) for l in labels], tol)

    @classmethod
    def from_basis_groups(cls, dim: int, groups: Mapping[str, Sequence[int]],
                          tol: Tolerances = DEFAULT_TOLERANCES) -> "Partition":
        """Blocks spanned by groups of standard basis vectors."""
        eye = np.eye(dim, dtype=complex)
        return cls.create(list(groups), [Event(dim, eye[:, list(idx)]) for idx in groups.values()], tol)

    @classmethod
    def trivial(cls, dim: int, label: str = "H") -> "Partition":
        return cls.create([label], [Event.full(dim)])

    def block(self, label: str) -> Event:
        try:
            return self.blocks[self.labels.index(label)]
        except ValueError:
            raise KeyError(f"no block labelled '{label}'") from None

    def __len__(self) -> int:
        return len(self.blocks)

    def coarsen(self, groups: Mapping[str, Sequence[str]],
                tol: Tolerances = DEFAULT_TOLERANCES) -> "Partition":
        """Partition whose blocks are joins of groups of this partition's blocks."""
        used = [l for members in groups.values() for l in members]
        if sorted(used) != sorted(self.labels):
            raise InvalidPartition("groups must use every block exactly once")
        blocks = [
            Event(self.ambient_dim, np.hstack([self.block(l).frame for l in members]))
            for members in groups.values()
        ]
        return Partition.create(list(groups), blocks, tol)


def _container(block: Event, coarse: Partition, tol: Tolerances) -> List[str]:
    return [label for label, c in zip(coarse.labels, coarse.blocks) if is_contained(block, c, tol)]


def is_refinement(fine: Partition, coarse: Partition, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """Every fine block sits inside exactly one coarse block, and ranks add up."""
    if fine.ambient_dim != coarse.ambient_dim:
        return False
    filled: Dict[str, int] = {label: 0 for label in coarse.labels}
    for block in fine.blocks:
        owners = _container(block, coarse, tol)
        if len(owners) != 1:
            return False
        filled[owners[0]] += block.rank
    return all(filled[l] == coarse.block(l).rank for l in coarse.labels)


def common_refinement(p: Partition, q: Partition, tol: Tolerances = DEFAULT_TOLERANCES) -> Partition:
    """Partition of all nonzero meets p_i ^ q_j.

    Raises NonCommuting when a pair of blocks meets in {0} without being
    orthogonal, or when the meets fail to fill the space.
    """
    if p.ambient_dim != q.ambient_dim:
        raise DimensionMismatch("partitions live in different spaces")
    labels, blocks = [], []
    for pl, pb in zip(p.labels, p.blocks):
        for ql, qb in zip(q.labels, q.blocks):
            m = meet(pb, qb, tol)
            if m.is_zero and not is_orthogonal(pb, qb, tol):
                raise NonCommuting(
                    f"blocks '{pl}' and '{ql}' meet in {{0}} but are not orthogonal",
                    {"pair": [pl, ql]},
                )
            if not m.is_zero:
                labels.append(f"{pl}&{ql}")
                blocks.append(m)
    total = sum(b.rank for b in blocks)
    if total != p.ambient_dim:
        raise NonCommuting(
            "meets of the two partitions do not fill the space",
            {"rank_sum": total, "dim": p.ambient_dim},
        )
    return Partition.create(labels, blocks, tol)

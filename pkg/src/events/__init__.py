"""Event spaces generated by orthogonal partitions."""

from .partition import Partition, is_refinement, common_refinement
from .algebra import (
    EventAlgebra,
    Member,
    algebra_from_partition,
    orthogonality_condition_holds,
    is_atomic_generated,
)

__all__ = [
    "Partition",
    "is_refinement",
    "common_refinement",
    "EventAlgebra",
    "Member",
    "algebra_from_partition",
    "orthogonality_condition_holds",
    "is_atomic_generated",
]

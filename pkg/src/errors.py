"""Exception hierarchy for BranchLab.

Violations found by the checkers are findings, reported in result objects.
Exceptions are reserved for inputs an operation cannot work with.
"""

from typing import Any, Dict, Optional


class BranchLabError(Exception):
    """Base class for all BranchLab errors."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": self.message, "details": self.details}


class DimensionMismatch(BranchLabError):
    """Operands live in spaces of different dimension or shape."""


class ZeroVector(BranchLabError):
    """A nonzero vector was required."""


class InvalidPartition(BranchLabError):
    """Blocks overlap, fail to cover the space, or labels repeat."""


class NonCommuting(BranchLabError):
    """Two partitions have blocks violating the Orthogonality Condition."""


class EnumerationCapExceeded(BranchLabError):
    """History enumeration would exceed the configured cap."""


class NotConsistent(BranchLabError):
    """A history space is not consistent within tolerance."""


class InvalidMapping(BranchLabError):
    """A coarse-graining map does not describe the given history spaces."""


class NormMismatch(BranchLabError):
    """States that a unitary must identify have different norms."""


class NoRoomInReward(BranchLabError):
    """A reward subspace is too small to host the requested images."""


class InsufficientDimension(BranchLabError):
    """Target macrostates have no free dimensions left."""


class TargetsOutsideReward(BranchLabError):
    """A target macrostate lies outside the reward of its source."""


class StateOutsideDomain(BranchLabError):
    """A state does not lie in the event it is supposed to belong to."""


class InvalidChain(BranchLabError):
    """A list of partitions is not a refinement chain."""


class DegenerateFrame(BranchLabError):
    """A frame is too ill-conditioned to decompose states numerically."""


class ScenarioError(BranchLabError):
    """A scenario file is malformed or violates the schema."""

"""Branch measures: Born weights, threshold counting and its grain dependence."""

from dataclasses import asdict, dataclass
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from ..errors import InvalidChain, ZeroVector
from ..events import Partition, is_refinement
from ..hilbert import DEFAULT_TOLERANCES, Tolerances, as_array

DEFAULT_THRESHOLD = 1e-12


@dataclass
class BranchProfile:
    weights: Dict[str, float]

    def total(self) -> float:
        return float(sum(self.weights.values()))

    def to_dict(self) -> dict:
        return dict(self.weights)


def born_weights(state, partition: Partition) -> BranchProfile:
    """||Pi_M psi||^2 / ||psi||^2 for every block M."""
    psi = as_array(state)
    norm2 = float(np.vdot(psi, psi).real)
    if norm2 == 0.0:
        raise ZeroVector("born weights of the zero vector are undefined")
    return BranchProfile({
        label: float(np.linalg.norm(block.coordinates(psi)) ** 2) / norm2
        for label, block in zip(partition.labels, partition.blocks)
    })


def branch_count(state, partition: Partition, threshold: float = DEFAULT_THRESHOLD) -> int:
    """Number of blocks whose Born weight exceeds the threshold."""
    if threshold <= 0.0:
        raise ValueError("threshold must be positive")
    return sum(1 for w in born_weights(state, partition).weights.values() if w > threshold)


@dataclass
class StabilityReport:
    """Counts per grain, coarse to fine, and the longest run of equal counts."""
    counts: List[int]
    ranks: List[int]
    plateau: Optional[List[int]] = None

    @property
    def stable(self) -> bool:
        return self.plateau is not None

    def to_dict(self) -> dict:
        data = asdict(self)
        data["stable"] = self.stable
        return data


def _longest_run(counts: Sequence[int]) -> Optional[List[int]]:
    best, start = None, 0
    for i in range(1, len(counts) + 1):
        if i == len(counts) or counts[i] != counts[start]:
            if i - start >= 2 and (best is None or i - start > best[1] - best[0] + 1):
                best = [start, i - 1]
            start = i
    return best


def count_stability(state, partitions: Sequence[Partition], threshold: float = DEFAULT_THRESHOLD,
                    tol: Tolerances = DEFAULT_TOLERANCES) -> StabilityReport:
    """Branch counts along a refinement chain given coarse to fine.

    The plateau is the first longest run (of length >= 2) of grains with the
    same count, as [first index, last index]; None means the count never settles.
    """
    if not partitions:
        raise InvalidChain("need at least one partition")
    for i, (coarse, fine) in enumerate(zip(partitions, partitions[1:])):
        if not is_refinement(fine, coarse, tol):
            raise InvalidChain(f"partition {i + 1} does not refine partition {i}", {"index": i + 1})
    counts = [branch_count(state, p, threshold) for p in partitions]
    return StabilityReport(counts, [len(p) for p in partitions], _longest_run(counts))


def consecutive_grains(finest: Partition, sizes: Iterable[int],
                       tol: Tolerances = DEFAULT_TOLERANCES) -> List[Partition]:
    """Coarsenings of `finest` grouping consecutive blocks `size` at a time."""
    chain = []
    for size in sizes:
        if size < 1:
            raise InvalidChain("grain sizes must be positive")
        labels = list(finest.labels)
        groups = {
            "+".join(labels[i:i + size]) if size > 1 else labels[i]: labels[i:i + size]
            for i in range(0, len(labels), size)
        }
        chain.append(finest.coarsen(groups, tol))
    return chain


@dataclass
class RatioResult:
    """Ratio of good to bad weight; `infinite` is set when the bad weight vanishes."""
    value: Optional[float]
    infinite: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def measure_ratio(profile: BranchProfile, good: Iterable[str], bad: Iterable[str],
                  tol: Tolerances = DEFAULT_TOLERANCES) -> RatioResult:
    good, bad = set(good), set(bad)
    if good & bad:
        raise ValueError(f"labels {sorted(good & bad)} are both good and bad")
    unknown = (good | bad) - set(profile.weights)
    if unknown:
        raise KeyError(f"unknown labels {sorted(unknown)}")
    g = sum(profile.weights[l] for l in good)
    b = sum(profile.weights[l] for l in bad)
    if b <= tol.exact:
        if g <= tol.exact:
            raise ZeroVector("both good and bad weights vanish")
        return RatioResult(None, True)
    return RatioResult(g / b)

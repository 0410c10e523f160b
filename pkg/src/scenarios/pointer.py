"""Overcomplete-looking Gaussian pointer frames on a cyclic grid, and the two
different branch decompositions they give of one state."""

from dataclasses import dataclass
from typing import List

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment

from ..errors import DegenerateFrame, ScenarioError

CONDITION_LIMIT = 1e8


@dataclass(frozen=True)
class PointerFrame:
    """Unit Gaussian profiles of width `width` centred at `centers`; columns of `vectors`."""
    grid_size: int
    width: float
    centers: np.ndarray
    vectors: np.ndarray


def pointer_frame(n: int, width: float, shift: float = 0.0) -> PointerFrame:
    if n < 2:
        raise ScenarioError("grid needs at least two points")
    if width <= 0.0:
        raise ScenarioError("pointer width must be positive")
    centers = np.arange(n) + shift
    sites = np.arange(n)[:, np.newaxis]
    distance = np.abs(sites - centers[np.newaxis, :]) % n
    distance = np.minimum(distance, n - distance)
    profiles = np.exp(-distance ** 2 / (2.0 * width ** 2)).astype(complex)
    profiles /= np.linalg.norm(profiles, axis=0)
    return PointerFrame(n, width, centers, profiles)


def frame_condition(frame: PointerFrame) -> float:
    """Condition number of the synthesis matrix (the square root of the Gram one)."""
    return float(np.linalg.cond(frame.vectors))


def decompose(state: np.ndarray, frame: PointerFrame) -> np.ndarray:
    """Components c_i pi_i of the state along the frame, one column each."""
    condition = frame_condition(frame)
    if condition > CONDITION_LIMIT:
        raise DegenerateFrame(
            f"pointer frame is numerically degenerate (condition number {condition:.3e})",
            {"condition": condition},
        )
    coefficients = scipy.linalg.solve(frame.vectors, state)
    return frame.vectors * coefficients[np.newaxis, :]


@dataclass
class PointerDecompositions:
    state: np.ndarray
    frame_a: PointerFrame
    frame_b: PointerFrame
    components_a: np.ndarray
    components_b: np.ndarray
    residuals: List[float]
    cross_overlaps: np.ndarray
    self_overlaps: np.ndarray
    deviation_lower: float
    deviation_upper: float
    max_cross_overlap: float
    conditions: List[float]

    def to_dict(self) -> dict:
        return {
            "grid_size": self.frame_a.grid_size,
            "width": self.frame_a.width,
            "shift": float(self.frame_b.centers[0] - self.frame_a.centers[0]),
            "residuals": self.residuals,
            "conditions": self.conditions,
            "max_cross_overlap": self.max_cross_overlap,
            "deviation_lower": self.deviation_lower,
            "deviation_upper": self.deviation_upper,
        }


def matched_deviation(cross: np.ndarray, own: np.ndarray) -> tuple:
    """Bounds on min over permutations s of max_j max_i |cross[i, j] - own[i, s(j)]|.

    The lower bound takes the best partner of each j separately; the upper
    bound evaluates the permutation minimising the summed costs.
    """
    cost = np.max(np.abs(cross[:, :, np.newaxis] - own[:, np.newaxis, :]), axis=0)
    lower = float(np.max(np.min(cost, axis=1)))
    rows, cols = linear_sum_assignment(cost)
    upper = float(np.max(cost[rows, cols]))
    return lower, upper


def build_pointer_decompositions(n: int = 32, width: float = 1.5, shift: float = 0.5) -> PointerDecompositions:
    """Decompose the pointer state at site 0 along two frames offset by `shift`.

    Both decompositions reconstruct the state; their components cannot be
    matched one to one, which the overlap deviation bounds quantify.
    """
    frame_a = pointer_frame(n, width)
    frame_b = pointer_frame(n, width, shift)
    state = frame_a.vectors[:, 0].copy()
    parts_a = decompose(state, frame_a)
    parts_b = decompose(state, frame_b)
    norm2 = float(np.vdot(state, state).real)
    cross = parts_a.conj().T @ parts_b / norm2
    own = parts_a.conj().T @ parts_a / norm2
    lower, upper = matched_deviation(cross, own)
    return PointerDecompositions(
        state=state,
        frame_a=frame_a,
        frame_b=frame_b,
        components_a=parts_a,
        components_b=parts_b,
        residuals=[float(np.linalg.norm(p.sum(axis=1) - state)) for p in (parts_a, parts_b)],
        cross_overlaps=cross,
        self_overlaps=own,
        deviation_lower=lower,
        deviation_upper=upper,
        max_cross_overlap=float(np.max(np.abs(cross))),
        conditions=[frame_condition(frame_a), frame_condition(frame_b)],
    )

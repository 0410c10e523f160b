"""Free evolution on a cyclic grid: compactly supported states grow tails everywhere."""

from dataclasses import dataclass
from typing import Dict, List

import numpy as np
import scipy.linalg

from ..decision import Act, DecisionProblem, smallest_member
from ..errors import ScenarioError
from ..events import Partition
from ..hilbert import DEFAULT_TOLERANCES, Tolerances
from .bundle import ScenarioBundle

MAX_GRID = 64
TIME_STEP = 0.1


def cell_label(index: int, n: int) -> str:
    return f"x{index:0{len(str(n - 1))}d}"


def kinetic_generator(n: int) -> np.ndarray:
    """-(1/2) times the cyclic second difference on a ring of unit circumference."""
    h = 1.0 / n
    shift = np.roll(np.eye(n), 1, axis=0)
    laplacian = (shift + shift.T - 2.0 * np.eye(n)) / h ** 2
    return -0.5 * laplacian


def propagator(n: int, steps: int, dt: float = TIME_STEP) -> np.ndarray:
    return scipy.linalg.expm(-1j * dt * steps * kinetic_generator(n))


@dataclass
class SpreadingOutcome:
    bundle: ScenarioBundle
    act: Act
    weights: Dict[str, float]
    range_event: List[str]


def build_spreading_tail(n: int = 16, steps: int = 1, dt: float = TIME_STEP,
                         tol: Tolerances = DEFAULT_TOLERANCES) -> SpreadingOutcome:
    """Start in the middle cell, evolve `steps` time steps, and find the smallest
    event of the cell algebra containing the result."""
    if not 2 <= n <= MAX_GRID:
        raise ScenarioError(f"grid size must lie in 2..{MAX_GRID}, got {n}")
    if steps < 0:
        raise ScenarioError("number of steps must be nonnegative")
    cells = Partition.from_basis_groups(n, {cell_label(i, n): [i] for i in range(n)})
    start = cell_label(n // 2, n)
    block = cells.block(start)
    act = Act(block, propagator(n, steps, dt) @ block.frame, "spread")
    acts = {label: [Act.identity(b)] for label, b in zip(cells.labels, cells.blocks)}
    acts[start].append(act)
    dp = DecisionProblem.create(cells, {"all": list(cells.labels)}, acts, {"all": 0.0}, tol=tol)
    state = block.frame[:, 0]
    weights = dp.macrostate_weights(act.apply(state))
    reach = sorted(smallest_member(act, dp.algebra, tol))
    return SpreadingOutcome(ScenarioBundle("spreading-tail", decision_problem=dp, state=state),
                            act, weights, reach)

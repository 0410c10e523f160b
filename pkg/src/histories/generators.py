"""Random history spaces with known structure, for property checks and demos."""

from typing import List

import numpy as np

from ..hilbert import random_state, random_unitary
from .space import Dynamics, HistorySpace, SampleSpace


def _split_random(rng: np.random.Generator, groups: List[List[int]], max_cells: int) -> List[List[int]]:
    """Split one splittable group in two, if the cell budget allows."""
    splittable = [i for i, g in enumerate(groups) if len(g) > 1]
    if not splittable or len(groups) >= max_cells:
        return groups
    i = int(rng.choice(splittable))
    members = list(rng.permutation(groups[i]))
    cut = int(rng.integers(1, len(members)))
    return groups[:i] + [sorted(members[:cut]), sorted(members[cut:])] + groups[i + 1:]


def random_branching_space(rng: np.random.Generator, dim: int, n_times: int,
                           max_cells: int = 4) -> HistorySpace:
    """History space whose Heisenberg sample spaces form a refinement chain.

    The Heisenberg cells at each time are spanned by groups of columns of one
    random unitary, every group splitting a group of the time before, so
    histories never merge. Schrodinger projectors are recovered by conjugating
    with random step unitaries.
    """
    basis = random_unitary(rng, dim)
    groups = [list(range(dim))]
    steps = [random_unitary(rng, dim) for _ in range(n_times)]
    dynamics = Dynamics(tuple(range(n_times + 1)), tuple(steps))
    spaces = []
    for k in range(1, n_times + 1):
        for _ in range(int(rng.integers(1, 3))):
            groups = _split_random(rng, groups, max_cells)
        w = dynamics.evolution(k)
        projectors = []
        for g in groups:
            cols = basis[:, g]
            projectors.append(w @ cols @ cols.conj().T @ w.conj().T)
        spaces.append(SampleSpace(tuple(projectors), tuple(f"c{i}" for i in range(len(groups)))))
    return HistorySpace(dynamics, tuple(spaces), random_state(rng, dim))


def crossing_space(dim_a: int = 2, dim_b: int = 2) -> HistorySpace:
    """Consistent but not branching: a product basis read one factor per time.

    The state is uniform over C^dim_a (x) C^dim_b, the dynamics trivial; time 1
    records the first factor and time 2 the second, so histories with different
    first records share their second record with nonzero weights.
    """
    dim = dim_a * dim_b
    eye_a, eye_b = np.eye(dim_a), np.eye(dim_b)
    first = [np.kron(np.outer(eye_a[i], eye_a[i]), eye_b) for i in range(dim_a)]
    second = [np.kron(eye_a, np.outer(eye_b[j], eye_b[j])) for j in range(dim_b)]
    spaces = (
        SampleSpace(tuple(np.asarray(p, dtype=complex) for p in first), tuple(f"a{i}" for i in range(dim_a))),
        SampleSpace(tuple(np.asarray(p, dtype=complex) for p in second), tuple(f"b{j}" for j in range(dim_b))),
    )
    return HistorySpace(Dynamics.trivial(dim, 2), spaces, np.ones(dim, dtype=complex) / np.sqrt(dim))

"""Small history spaces: the system-device measurement model, a recombining
interferometer, and an instance whose branch lines fall outside an algebra."""

from typing import Sequence, Tuple

import numpy as np

from ..errors import ScenarioError
from ..events import EventAlgebra, Partition, algebra_from_partition
from ..histories import Dynamics, HistorySpace, SampleSpace

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)


def _basis_sample_space(dim: int, labels: Sequence[str]) -> SampleSpace:
    eye = np.eye(dim, dtype=complex)
    return SampleSpace(tuple(np.outer(eye[i], eye[i]) for i in range(dim)), tuple(labels))


def measurement_step(m: int) -> np.ndarray:
    """Controlled swap on system (x) device: for system state i, exchange the
    device's ready state (index m) with its record i."""
    device = m + 1
    step = np.zeros((m * device, m * device), dtype=complex)
    for i in range(m):
        swap = np.eye(device, dtype=complex)
        swap[[i, m]] = swap[[m, i]]
        step[i * device:(i + 1) * device, i * device:(i + 1) * device] = swap
    return step


def build_measurement_model(coeffs: Sequence[complex], remeasure: bool = False) -> HistorySpace:
    """System prepared in sum_i c_i |i>, measured by a device starting in its ready state.

    One sample space {|i><i| (x) 1} after the entangling step; with `remeasure`
    a second, trivial step reads the same basis again.
    """
    c = np.asarray(list(coeffs), dtype=complex)
    if c.size == 0:
        raise ScenarioError("the measurement model needs at least one coefficient")
    norm = np.linalg.norm(c)
    if norm == 0.0:
        raise ScenarioError("coefficients must not all vanish")
    m = c.size
    device = m + 1
    ready = np.zeros(device, dtype=complex)
    ready[m] = 1.0
    initial = np.kron(c / norm, ready)
    eye_device = np.eye(device, dtype=complex)
    eye_system = np.eye(m, dtype=complex)
    space = SampleSpace(
        tuple(np.kron(np.outer(eye_system[i], eye_system[i]), eye_device) for i in range(m)),
        tuple(str(i) for i in range(m)),
    )
    steps = [measurement_step(m)]
    if remeasure:
        steps.append(np.eye(m * device, dtype=complex))
    dynamics = Dynamics(tuple(range(len(steps) + 1)), tuple(steps))
    return HistorySpace(dynamics, tuple(space for _ in steps), initial)


def build_recombining_space() -> HistorySpace:
    """A qubit read in the computational basis, rotated by a Hadamard, read again.

    Branches that split at the first reading recombine at the second, so the
    space is neither consistent nor branching.
    """
    dynamics = Dynamics((0.0, 1.0, 2.0), (np.eye(2, dtype=complex), HADAMARD))
    space = _basis_sample_space(2, ["0", "1"])
    return HistorySpace(dynamics, (space, space), np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0))


def build_algebra_membership_instance(aligned: bool = False) -> Tuple[HistorySpace, EventAlgebra]:
    """One reading of a qubit prepared in |0>, against the algebra of the computational basis.

    Read in the diagonal basis the branch states are |+> and |->, lines that
    are not joins of computational-basis blocks; with `aligned` the reading is
    in the computational basis and every nonzero branch line is a member.
    """
    basis = np.eye(2, dtype=complex) if aligned else HADAMARD
    labels = ("0", "1") if aligned else ("+", "-")
    space = SampleSpace(tuple(np.outer(basis[:, i], basis[:, i].conj()) for i in range(2)), labels)
    hs = HistorySpace(Dynamics.trivial(2, 1), (space,), np.array([1.0, 0.0], dtype=complex))
    algebra = algebra_from_partition(Partition.from_basis_groups(2, {"e0": [0], "e1": [1]}))
    return hs, algebra

"""Built-in scenarios reproducing the formal demonstrations."""

from .bundle import ScenarioBundle
from .measurement import (
    HADAMARD,
    measurement_step,
    build_measurement_model,
    build_recombining_space,
    build_algebra_membership_instance,
)
from .bets import (
    ABC_MACROSTATES,
    ABC_REWARDS,
    ABC_UTILITIES,
    build_abc_bets,
    build_branching_indifference_composite,
    build_imprecise_bet,
)
from .contradictions import (
    ErasureOutcome,
    RewardAvailabilityOutcome,
    erasure_problem,
    build_erasure_contradiction,
    build_reward_availability_contradiction,
)
from .grid import MAX_GRID, SpreadingOutcome, cell_label, kinetic_generator, propagator, build_spreading_tail
from .pointer import (
    PointerFrame,
    PointerDecompositions,
    pointer_frame,
    frame_condition,
    decompose,
    matched_deviation,
    build_pointer_decompositions,
)
from .registry import DemoResult, DemoRegistry, get_registry

__all__ = [
    "ScenarioBundle",
    "HADAMARD",
    "measurement_step",
    "build_measurement_model",
    "build_recombining_space",
    "build_algebra_membership_instance",
    "ABC_MACROSTATES",
    "ABC_REWARDS",
    "ABC_UTILITIES",
    "build_abc_bets",
    "build_branching_indifference_composite",
    "build_imprecise_bet",
    "ErasureOutcome",
    "RewardAvailabilityOutcome",
    "erasure_problem",
    "build_erasure_contradiction",
    "build_reward_availability_contradiction",
    "MAX_GRID",
    "SpreadingOutcome",
    "cell_label",
    "kinetic_generator",
    "propagator",
    "build_spreading_tail",
    "PointerFrame",
    "PointerDecompositions",
    "pointer_frame",
    "frame_condition",
    "decompose",
    "matched_deviation",
    "build_pointer_decompositions",
    "DemoResult",
    "DemoRegistry",
    "get_registry",
]

"""Typed payloads for scenario files and demo options."""

from enum import Enum
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, conlist

ComplexPair = conlist(float, min_length=2, max_length=2)
Vector = List[ComplexPair]
Matrix = List[List[ComplexPair]]


class ScenarioKind(str, Enum):
    HISTORY_SPACE = "history_space"
    DECISION_PROBLEM = "decision_problem"
    BUNDLE = "bundle"


class TolerancesPayload(BaseModel):
    """Any subset of the numeric thresholds."""
    exact: Optional[float] = Field(default=None, gt=0)
    consistency: Optional[float] = Field(default=None, gt=0)
    rank: Optional[float] = Field(default=None, gt=0)
    near_orth: Optional[float] = Field(default=None, gt=0)


class CellPayload(BaseModel):
    label: str = Field(..., description="Cell label")
    projector: Matrix = Field(..., description="Projector, row-major")


class HistorySpacePayload(BaseModel):
    dim: int = Field(..., ge=1)
    times: List[float] = Field(..., min_length=2, description="t0 < t1 < ... < tn")
    steps: List[Matrix] = Field(..., description="Unitary step k maps t(k-1) to t(k)")
    sample_spaces: List[List[CellPayload]] = Field(..., description="One sample space per time t1..tn")
    initial: Vector


class ActPayload(BaseModel):
    label: str
    domain: List[str] = Field(..., min_length=1, description="Macrostate labels whose join is the domain")
    matrix: Matrix = Field(..., description="dim x rank(domain) isometry, row-major")


class ContinuationPayload(BaseModel):
    label: str
    acts: Dict[str, str] = Field(default_factory=dict, description="Branch macrostate -> act label")


class DiachronicPayload(BaseModel):
    macrostate: str
    state: Vector
    act: str
    branches: List[str]
    pairs: List[conlist(ContinuationPayload, min_length=2, max_length=2)]


class ContextPayload(BaseModel):
    macrostate: str
    state: Vector
    prefix: str


class DecisionProblemPayload(BaseModel):
    dim: int = Field(..., ge=1)
    macrostates: Dict[str, Matrix] = Field(..., description="Label -> frame (columns are frame vectors)")
    rewards: Dict[str, List[str]] = Field(..., description="Reward -> macrostate labels")
    acts: List[ActPayload] = Field(default_factory=list)
    utilities: Optional[Dict[str, float]] = None
    states: Optional[Dict[str, List[Vector]]] = None
    diachronic: Optional[List[DiachronicPayload]] = None
    contexts: Optional[List[ContextPayload]] = None


class BundlePayload(BaseModel):
    name: str
    history_space: Optional[HistorySpacePayload] = None
    decision_problem: Optional[DecisionProblemPayload] = None
    state: Optional[Vector] = None


class ScenarioFile(BaseModel):
    version: Literal[1] = 1
    kind: ScenarioKind
    payload: dict
    tolerances: Optional[TolerancesPayload] = None


# Demo options

class NoOptions(BaseModel):
    pass


class MeasurementDemoInput(BaseModel):
    coeffs: List[float] = Field(default_factory=lambda: [1.0, 1.0], min_length=1,
                                description="Amplitudes of the measured system")
    remeasure: bool = Field(default=False, description="Read the same basis a second time")


class ErasureDemoInput(BaseModel):
    offset: float = Field(default=0.0, description="Angle between the two erasure targets")
    distinct_targets: bool = Field(default=False, description="Send the two states to orthogonal targets")


class RewardAvailabilityDemoInput(BaseModel):
    single_reward: bool = Field(default=False, description="Use one reward spanning the space")


class SpreadingTailDemoInput(BaseModel):
    n: int = Field(default=16, ge=2, le=64, description="Grid size")
    steps: int = Field(default=1, ge=0, description="Number of propagator steps")


class PointerDemoInput(BaseModel):
    n: int = Field(default=32, ge=2, le=256, description="Grid size")
    width: float = Field(default=1.5, gt=0, description="Pointer width in grid units")
    shift: float = Field(default=0.5, description="Offset of the second frame")


class ImpreciseBetDemoInput(BaseModel):
    epsilon: float = Field(default=1e-6, ge=0, le=1, description="Weight of the unintended down branch")

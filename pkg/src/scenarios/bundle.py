"""A built-in scenario packaged for checking, reporting and export."""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..axioms import BranchingContext, DiachronicScenario
from ..decision import DecisionProblem
from ..histories import HistorySpace


@dataclass
class ScenarioBundle:
    name: str
    history_space: Optional[HistorySpace] = None
    decision_problem: Optional[DecisionProblem] = None
    diachronic: List[DiachronicScenario] = field(default_factory=list)
    contexts: List[BranchingContext] = field(default_factory=list)
    state: Optional[np.ndarray] = None

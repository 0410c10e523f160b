"""Scenario file schema, payload models, validators and codec."""

from .models import (
    ScenarioKind,
    ScenarioFile,
    TolerancesPayload,
    HistorySpacePayload,
    DecisionProblemPayload,
    BundlePayload,
    MeasurementDemoInput,
    ErasureDemoInput,
    RewardAvailabilityDemoInput,
    SpreadingTailDemoInput,
    PointerDemoInput,
    ImpreciseBetDemoInput,
    NoOptions,
)
from .json_schema import SCENARIO_JSON_SCHEMA, DEMO_SCHEMAS
from .validators import (
    DEMO_INPUTS,
    validate_scenario_document,
    validate_payload,
    validate_demo_arguments,
    parse_float_list,
    parse_int_list,
    parse_utilities,
)

__all__ = [
    "ScenarioKind",
    "ScenarioFile",
    "TolerancesPayload",
    "HistorySpacePayload",
    "DecisionProblemPayload",
    "BundlePayload",
    "MeasurementDemoInput",
    "ErasureDemoInput",
    "RewardAvailabilityDemoInput",
    "SpreadingTailDemoInput",
    "PointerDemoInput",
    "ImpreciseBetDemoInput",
    "NoOptions",
    "SCENARIO_JSON_SCHEMA",
    "DEMO_SCHEMAS",
    "DEMO_INPUTS",
    "validate_scenario_document",
    "validate_payload",
    "validate_demo_arguments",
    "parse_float_list",
    "parse_int_list",
    "parse_utilities",
]

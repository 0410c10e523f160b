"""Validation of scenario documents, demo options and command-line values."""

from typing import Any, Dict, List

from jsonschema import Draft202012Validator
from pydantic import ValidationError

from .json_schema import SCENARIO_JSON_SCHEMA
from .models import (
    ErasureDemoInput,
    ImpreciseBetDemoInput,
    MeasurementDemoInput,
    NoOptions,
    PointerDemoInput,
    RewardAvailabilityDemoInput,
    ScenarioFile,
    SpreadingTailDemoInput,
)

DEMO_INPUTS: Dict[str, type] = {
    "measurement": MeasurementDemoInput,
    "recombining": NoOptions,
    "algebra-membership": NoOptions,
    "abc-bets": NoOptions,
    "branching-composite": NoOptions,
    "imprecise-bet": ImpreciseBetDemoInput,
    "erasure": ErasureDemoInput,
    "reward-availability": RewardAvailabilityDemoInput,
    "spreading-tail": SpreadingTailDemoInput,
    "pointer-decomp": PointerDemoInput,
}

_validator = Draft202012Validator(SCENARIO_JSON_SCHEMA)


def _format_pydantic(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        field = ".".join(str(loc) for loc in item["loc"])
        parts.append(f"{field}: {item['msg']}")
    return "; ".join(parts)


def validate_scenario_document(document: Any) -> tuple:
    """
    Validate a parsed scenario file against the JSON Schema, then the typed model.

    Returns:
        tuple: (is_valid: bool, ScenarioFile or error_message)
    """
    errors = sorted(_validator.iter_errors(document), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        where = "/".join(str(p) for p in first.absolute_path) or "<root>"
        return False, f"{where}: {first.message}"
    try:
        return True, ScenarioFile(**document)
    except ValidationError as e:
        return False, _format_pydantic(e)


def validate_payload(model: type, payload: Dict[str, Any]) -> tuple:
    """(is_valid, model instance or error_message) for one payload section."""
    try:
        return True, model(**payload)
    except ValidationError as e:
        return False, _format_pydantic(e)


def validate_demo_arguments(name: str, arguments: Dict[str, Any]) -> tuple:
    """
    Validate demo options against the demo's input model.

    Returns:
        tuple: (is_valid: bool, validated_args or error_message)
    """
    if name not in DEMO_INPUTS:
        return False, f"Unknown demo: {name}"
    ok, result = validate_payload(DEMO_INPUTS[name], {k: v for k, v in arguments.items() if v is not None})
    if not ok:
        return False, result
    return True, result.model_dump()


def parse_float_list(text: str) -> List[float]:
    """"3,4" -> [3.0, 4.0]."""
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"expected comma-separated numbers, got '{text}'") from None


def parse_int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got '{text}'") from None


def parse_utilities(text: str) -> Dict[str, float]:
    """"+1000=1000,0=0,-100=-100" -> {"+1000": 1000.0, "0": 0.0, "-100": -100.0}."""
    utilities = {}
    for part in text.split(","):
        if not part.strip():
            continue
        key, sep, value = part.partition("=")
        if not sep or not key.strip():
            raise ValueError(f"expected reward=value, got '{part}'")
        try:
            utilities[key.strip()] = float(value)
        except ValueError:
            raise ValueError(f"utility for '{key.strip()}' is not a number") from None
    return utilities

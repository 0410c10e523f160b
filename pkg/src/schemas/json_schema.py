"""JSON Schema of scenario files (version 1) and descriptions of the built-in demos."""

_COMPLEX = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_VECTOR = {"type": "array", "items": {"$ref": "#/$defs/complex"}, "minItems": 1}
_MATRIX = {"type": "array", "items": {"$ref": "#/$defs/vector"}, "minItems": 1}
_LABEL = {"type": "string", "minLength": 1}

_HISTORY_SPACE = {
    "type": "object",
    "required": ["dim", "times", "steps", "sample_spaces", "initial"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "times": {"type": "array", "items": {"type": "number"}, "minItems": 2},
        "steps": {"type": "array", "items": {"$ref": "#/$defs/matrix"}},
        "sample_spaces": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 1,
                "items": {
                    "type": "object",
                    "required": ["label", "projector"],
                    "properties": {"label": _LABEL, "projector": {"$ref": "#/$defs/matrix"}},
                },
            },
        },
        "initial": {"$ref": "#/$defs/vector"},
    },
}

_CONTINUATION = {
    "type": "object",
    "required": ["label"],
    "properties": {"label": _LABEL, "acts": {"type": "object", "additionalProperties": {"type": "string"}}},
}

_DECISION_PROBLEM = {
    "type": "object",
    "required": ["dim", "macrostates", "rewards"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "macrostates": {"type": "object", "minProperties": 1, "additionalProperties": {"$ref": "#/$defs/matrix"}},
        "rewards": {
            "type": "object",
            "minProperties": 1,
            "additionalProperties": {"type": "array", "items": _LABEL, "minItems": 1},
        },
        "acts": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "domain", "matrix"],
                "properties": {
                    "label": _LABEL,
                    "domain": {"type": "array", "items": _LABEL, "minItems": 1},
                    "matrix": {"$ref": "#/$defs/matrix"},
                },
            },
        },
        "utilities": {"type": "object", "additionalProperties": {"type": "number"}},
        "states": {"type": "object", "additionalProperties": {"type": "array", "items": {"$ref": "#/$defs/vector"}}},
        "diachronic": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["macrostate", "state", "act", "branches", "pairs"],
                "properties": {
                    "macrostate": _LABEL,
                    "state": {"$ref": "#/$defs/vector"},
                    "act": _LABEL,
                    "branches": {"type": "array", "items": _LABEL, "minItems": 1},
                    "pairs": {
                        "type": "array",
                        "items": {"type": "array", "items": _CONTINUATION, "minItems": 2, "maxItems": 2},
                    },
                },
            },
        },
        "contexts": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["macrostate", "state", "prefix"],
                "properties": {"macrostate": _LABEL, "state": {"$ref": "#/$defs/vector"}, "prefix": _LABEL},
            },
        },
    },
}

SCENARIO_JSON_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "BranchLab scenario file",
    "type": "object",
    "required": ["version", "kind", "payload"],
    "properties": {
        "version": {"const": 1},
        "kind": {"enum": ["history_space", "decision_problem", "bundle"]},
        "tolerances": {
            "type": "object",
            "properties": {k: {"type": "number", "exclusiveMinimum": 0}
                           for k in ("exact", "consistency", "rank", "near_orth")},
            "additionalProperties": False,
        },
        "payload": {"type": "object"},
    },
    "allOf": [
        {
            "if": {"properties": {"kind": {"const": "history_space"}}},
            "then": {"properties": {"payload": {"$ref": "#/$defs/history_space"}}},
        },
        {
            "if": {"properties": {"kind": {"const": "decision_problem"}}},
            "then": {"properties": {"payload": {"$ref": "#/$defs/decision_problem"}}},
        },
        {
            "if": {"properties": {"kind": {"const": "bundle"}}},
            "then": {
                "properties": {
                    "payload": {
                        "type": "object",
                        "required": ["name"],
                        "properties": {
                            "name": _LABEL,
                            "history_space": {"$ref": "#/$defs/history_space"},
                            "decision_problem": {"$ref": "#/$defs/decision_problem"},
                            "state": {"$ref": "#/$defs/vector"},
                        },
                    },
                },
            },
        },
    ],
    "$defs": {
        "complex": _COMPLEX,
        "vector": _VECTOR,
        "matrix": _MATRIX,
        "history_space": _HISTORY_SPACE,
        "decision_problem": _DECISION_PROBLEM,
    },
}


DEMO_SCHEMAS = [
    {
        "name": "measurement",
        "description": "System-device measurement model; branch weights, consistency and branching.",
        "parameters": {
            "coeffs": "Comma-separated amplitudes (default 1,1)",
            "remeasure": "Read the same basis a second time",
        },
    },
    {
        "name": "recombining",
        "description": "Qubit read, rotated and read again: inconsistent, non-branching, weights fail to add.",
        "parameters": {},
    },
    {
        "name": "algebra-membership",
        "description": "Branch lines of a refined space that are not members of the macrostate algebra.",
        "parameters": {},
    },
    {
        "name": "abc-bets",
        "description": "Bets A, B, C on a spin: values, orders and diachronic consistency per strategy.",
        "parameters": {},
    },
    {
        "name": "branching-composite",
        "description": "Bets plus a within-reward split: counting strategies break branching indifference.",
        "parameters": {},
    },
    {
        "name": "imprecise-bet",
        "description": "A bet made with small error epsilon: expected utility and minimax disagree.",
        "parameters": {"epsilon": "Weight of the unintended branch (default 1e-6)"},
    },
    {
        "name": "erasure",
        "description": "Erasing two orthogonal records into one state: the compatible lift is not unitary.",
        "parameters": {"offset": "Angle between the targets", "distinct_targets": "Use orthogonal targets"},
    },
    {
        "name": "reward-availability",
        "description": "Sending the whole space into a smaller reward: the dimension ledger fails.",
        "parameters": {"single_reward": "Use one reward spanning the space"},
    },
    {
        "name": "spreading-tail",
        "description": "Free evolution on a cyclic grid spreads a localized state into every cell.",
        "parameters": {"n": "Grid size (2..64)", "steps": "Propagator steps"},
    },
    {
        "name": "pointer-decomp",
        "description": "Two Gaussian pointer frames giving different branch decompositions of one state.",
        "parameters": {"n": "Grid size", "width": "Pointer width", "shift": "Offset of the second frame"},
    },
]

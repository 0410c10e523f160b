"""Conversion between scenario payloads and domain objects."""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from ..axioms import BranchingContext, Continuation, DiachronicScenario
from ..decision import Act, DecisionProblem, IDENTITY_LABEL
from ..errors import BranchLabError, ScenarioError
from ..events import Partition
from ..hilbert import DEFAULT_TOLERANCES, Event, Tolerances
from ..histories import Dynamics, HistorySpace, SampleSpace
from ..scenarios.bundle import ScenarioBundle
from .models import (
    BundlePayload,
    DecisionProblemPayload,
    HistorySpacePayload,
    ScenarioFile,
    ScenarioKind,
)
from .validators import validate_payload, validate_scenario_document

SCHEMA_VERSION = 1


def encode_array(array: np.ndarray) -> list:
    """Complex array -> nested lists ending in [re, im] pairs."""
    array = np.asarray(array, dtype=complex)
    return np.stack([array.real, array.imag], axis=-1).tolist()


def decode_array(data: Any) -> np.ndarray:
    pairs = np.asarray(data, dtype=float)
    if pairs.shape[-1:] != (2,):
        raise ScenarioError("complex numbers must be [re, im] pairs")
    return pairs[..., 0] + 1j * pairs[..., 1]


def _frame(data: Any, dim: int, label: str) -> np.ndarray:
    frame = decode_array(data)
    if frame.ndim != 2 or frame.shape[0] != dim:
        raise ScenarioError(f"'{label}' must be a matrix with {dim} rows")
    return frame


# History spaces

def encode_history_space(hs: HistorySpace) -> Dict[str, Any]:
    return {
        "dim": hs.dim,
        "times": list(hs.dynamics.times),
        "steps": [encode_array(s) for s in hs.dynamics.steps],
        "sample_spaces": [
            [{"label": l, "projector": encode_array(p)} for l, p in zip(s.cell_labels, s.projectors)]
            for s in hs.sample_spaces
        ],
        "initial": encode_array(hs.initial),
    }


def decode_history_space(payload: HistorySpacePayload, tol: Tolerances = DEFAULT_TOLERANCES) -> HistorySpace:
    dim = payload.dim
    steps = [_frame(s, dim, f"step {k}") for k, s in enumerate(payload.steps, start=1)]
    spaces = [
        SampleSpace.create([_frame(c.projector, dim, c.label) for c in cells], [c.label for c in cells], tol)
        for cells in payload.sample_spaces
    ]
    dynamics = Dynamics.create(payload.times, steps, tol)
    return HistorySpace.create(dynamics, spaces, decode_array(payload.initial), tol)


# Decision problems

def encode_decision_problem(dp: DecisionProblem, diachronic: List[DiachronicScenario] = (),
                            contexts: List[BranchingContext] = ()) -> Dict[str, Any]:
    acts = []
    order = {label: i for i, label in enumerate(dp.macrostates.labels)}
    for member in sorted(dp.acts, key=lambda m: (len(m), sorted(order[l] for l in m))):
        labels = [l for l in dp.macrostates.labels if l in member]
        canonical = dp.algebra.event(member).frame
        for act in dp.acts[member]:
            # re-expressed against the frame the decoder rebuilds from `labels`
            acts.append({"label": act.label, "domain": labels, "matrix": encode_array(act.operator @ canonical)})
    payload: Dict[str, Any] = {
        "dim": dp.ambient_dim,
        "macrostates": {l: encode_array(b.frame) for l, b in zip(dp.macrostates.labels, dp.macrostates.blocks)},
        "rewards": {r: list(dp.reward_members(r)) for r in dp.rewards.labels},
        "acts": acts,
    }
    if dp.utilities is not None:
        payload["utilities"] = dict(dp.utilities)
    if dp.states:
        payload["states"] = {l: [encode_array(v) for v in vs] for l, vs in dp.states.items()}
    if diachronic:
        payload["diachronic"] = [
            {
                "macrostate": d.macrostate,
                "state": encode_array(d.state),
                "act": d.act,
                "branches": list(d.branches),
                "pairs": [[{"label": c.label, "acts": dict(c.acts)} for c in pair] for pair in d.pairs],
            }
            for d in diachronic
        ]
    if contexts:
        payload["contexts"] = [
            {"macrostate": c.macrostate, "state": encode_array(c.state), "prefix": c.prefix} for c in contexts
        ]
    return payload


def decode_decision_problem(payload: DecisionProblemPayload, tol: Tolerances = DEFAULT_TOLERANCES):
    """Returns (decision problem, diachronic scenarios, branching contexts)."""
    dim = payload.dim
    frames = {label: _frame(frame, dim, label) for label, frame in payload.macrostates.items()}
    macrostates = Partition.from_frames(frames, tol)
    acts: Dict[tuple, List[Act]] = {}
    for item in payload.acts:
        unknown = set(item.domain) - set(macrostates.labels)
        if unknown:
            raise ScenarioError(f"act '{item.label}' refers to unknown macrostates {sorted(unknown)}")
        domain = Event(dim, np.hstack([macrostates.block(l).frame for l in item.domain]))
        matrix = _frame(item.matrix, dim, item.label)
        if matrix.shape[1] != domain.rank:
            raise ScenarioError(f"act '{item.label}' needs {domain.rank} columns, has {matrix.shape[1]}")
        acts.setdefault(tuple(sorted(item.domain)), []).append(Act(domain, matrix, item.label))
    states = {label: [decode_array(v) for v in vectors] for label, vectors in (payload.states or {}).items()}
    dp = DecisionProblem.create(macrostates, payload.rewards, acts, payload.utilities, states, tol)

    diachronic = [
        DiachronicScenario(
            d.macrostate, decode_array(d.state), d.act, list(d.branches),
            [tuple(Continuation(c.label, dict(c.acts)) for c in pair) for pair in d.pairs],
        )
        for d in payload.diachronic or []
    ]
    contexts = [BranchingContext(c.macrostate, decode_array(c.state), c.prefix) for c in payload.contexts or []]
    return dp, diachronic, contexts


# Whole files

def encode_bundle(bundle: ScenarioBundle) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"name": bundle.name}
    if bundle.history_space is not None:
        payload["history_space"] = encode_history_space(bundle.history_space)
    if bundle.decision_problem is not None:
        payload["decision_problem"] = encode_decision_problem(
            bundle.decision_problem, bundle.diachronic, bundle.contexts)
    if bundle.state is not None:
        payload["state"] = encode_array(bundle.state)
    return payload


def scenario_document(bundle: ScenarioBundle, tolerances: Optional[Tolerances] = None) -> Dict[str, Any]:
    document: Dict[str, Any] = {"version": SCHEMA_VERSION, "kind": ScenarioKind.BUNDLE.value,
                                "payload": encode_bundle(bundle)}
    if tolerances is not None:
        document["tolerances"] = tolerances.model_dump()
    return document


@dataclass
class LoadedScenario:
    kind: ScenarioKind
    tolerances: Tolerances
    bundle: ScenarioBundle


def _tolerances(scenario: ScenarioFile) -> Tolerances:
    if scenario.tolerances is None:
        return DEFAULT_TOLERANCES
    changes = {k: v for k, v in scenario.tolerances.model_dump().items() if v is not None}
    try:
        return DEFAULT_TOLERANCES.override(**changes)
    except ValueError as e:
        raise ScenarioError(f"invalid tolerances: {e}") from None


def _parse(model: type, payload: Dict[str, Any]):
    ok, result = validate_payload(model, payload)
    if not ok:
        raise ScenarioError(result)
    return result


def load_scenario(source: Union[str, Path, Dict[str, Any]]) -> LoadedScenario:
    """Read, validate and decode a scenario file (path or parsed document)."""
    if isinstance(source, dict):
        document, name = source, "scenario"
    else:
        path = Path(source)
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except OSError as e:
            raise ScenarioError(f"cannot read {path}: {e.strerror}") from None
        except json.JSONDecodeError as e:
            raise ScenarioError(f"{path} is not valid JSON: {e.msg} (line {e.lineno})") from None
        name = path.stem
    ok, scenario = validate_scenario_document(document)
    if not ok:
        raise ScenarioError(scenario)
    tol = _tolerances(scenario)
    try:
        if scenario.kind is ScenarioKind.HISTORY_SPACE:
            hs = decode_history_space(_parse(HistorySpacePayload, scenario.payload), tol)
            bundle = ScenarioBundle(name, history_space=hs)
        elif scenario.kind is ScenarioKind.DECISION_PROBLEM:
            dp, diachronic, contexts = decode_decision_problem(_parse(DecisionProblemPayload, scenario.payload), tol)
            bundle = ScenarioBundle(name, decision_problem=dp, diachronic=diachronic, contexts=contexts)
        else:
            payload = _parse(BundlePayload, scenario.payload)
            bundle = ScenarioBundle(payload.name)
            if payload.history_space is not None:
                bundle.history_space = decode_history_space(payload.history_space, tol)
            if payload.decision_problem is not None:
                dp, diachronic, contexts = decode_decision_problem(payload.decision_problem, tol)
                bundle.decision_problem, bundle.diachronic, bundle.contexts = dp, diachronic, contexts
            if payload.state is not None:
                bundle.state = decode_array(payload.state)
    except BranchLabError:
        raise
    except (ValueError, KeyError, IndexError) as e:
        raise ScenarioError(f"scenario does not describe valid objects: {e}") from None
    return LoadedScenario(scenario.kind, tol, bundle)

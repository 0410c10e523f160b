#!/usr/bin/env python3
"""
BranchLab - Command Line Interface.

Usage:
    python -m app.cli check-consistency scenario.json
    python -m app.cli check-axioms abc.json --strategy born_eu
    python -m app.cli demo measurement --coeffs 3,4
    python -m app.cli export abc-bets --out abc.json
"""

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from config.settings import DEFAULT_SEED
from src import __version__
from src.axioms import Strategy, StrategyKind, preference_order, run_suite, sample_states, suite_passed
from src.decision import check_problem_continuity, check_richness
from src.errors import BranchLabError, ScenarioError
from src.hilbert import DEFAULT_TOLERANCES, Tolerances
from src.histories import bc_refine, branching_report, consistency_report, is_branching, refinement_in_algebra
from src.logging import get_audit_logger
from src.measures import born_weights, branch_count, consecutive_grains, count_stability, measure_ratio
from src.measures import DEFAULT_THRESHOLD
from src.scenarios import ScenarioBundle, get_registry
from src.schemas import DEMO_INPUTS, parse_float_list, parse_int_list, parse_utilities
from src.schemas.codec import load_scenario, scenario_document

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_FINDINGS = 2

console = Console(stderr=True)


class CliError(Exception):
    """Bad command-line input; reported in one line with exit code 1."""


class ArgumentParser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; that code is reserved for findings."""

    def error(self, message: str):
        raise CliError(message)


def _to_builtin(value: Any):
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, complex):
        return [value.real, value.imag]
    raise TypeError(f"cannot serialise {type(value).__name__}")


def dump_json(data: Any) -> str:
    """Sorted keys and two-space indentation, so equal reports are equal bytes."""
    return json.dumps(data, sort_keys=True, indent=2, default=_to_builtin) + "\n"


@dataclass
class CommandResult:
    sections: Dict[str, Any]
    findings: bool
    tolerances: Tolerances = DEFAULT_TOLERANCES


# Report sections

def _load(path: str) -> Tuple[ScenarioBundle, Tolerances]:
    loaded = load_scenario(path)
    return loaded.bundle, loaded.tolerances


def _require(bundle: ScenarioBundle, attribute: str, command: str):
    value = getattr(bundle, attribute)
    if value is None:
        raise ScenarioError(f"{command} needs a scenario with a {attribute.replace('_', ' ')}")
    return value


def cmd_check_consistency(args, rng: np.random.Generator) -> CommandResult:
    bundle, tol = _load(args.file)
    hs = _require(bundle, "history_space", "check-consistency")
    consistency = consistency_report(hs, tol, weight_floor=args.weight_floor)
    branching = branching_report(hs, tol)
    sections: Dict[str, Any] = {"consistency": consistency.to_dict(), "branching": branching.to_dict()}
    if consistency.consistent and not branching.branching:
        refined = bc_refine(hs, tol)
        sections["refinement"] = {
            "branching": is_branching(refined, tol),
            "cells": [len(space.cell_labels) for space in refined.sample_spaces],
        }
    dp = bundle.decision_problem
    if consistency.consistent and dp is not None and dp.ambient_dim == hs.dim:
        sections["algebra_membership"] = refinement_in_algebra(hs, dp.algebra, tol).to_dict()
    _log_check("consistency", consistency.consistent, {"max_overlap": consistency.max_overlap})
    _log_check("branching", branching.branching)
    findings = not (consistency.consistent and branching.branching)
    if branching.witness is not None:
        get_audit_logger().log_finding("branching", sections["branching"]["witness"])
    return CommandResult(sections, findings, tol)


def cmd_check_richness(args, rng: np.random.Generator) -> CommandResult:
    bundle, tol = _load(args.file)
    dp = _require(bundle, "decision_problem", "check-richness")
    get_audit_logger().log_check_started("richness")
    richness = check_richness(dp, tol)
    sections: Dict[str, Any] = {"richness": richness.to_dict()}
    for name, result in richness.conditions.items():
        _log_check(name, result.passed)
        for witness in result.witnesses:
            get_audit_logger().log_finding(name, witness)
    findings = not richness.passed
    if args.problem_continuity:
        continuity = check_problem_continuity(dp, rng, args.delta, tol=tol)
        sections["problem_continuity"] = continuity.to_dict()
        _log_check("problem_continuity", continuity.passed)
        findings = findings or not continuity.passed
    return CommandResult(sections, findings, tol)


def _strategy(args) -> Strategy:
    utilities = parse_utilities(args.utilities) if args.utilities else None
    act_costs = parse_utilities(args.act_costs) if args.act_costs else {}
    return Strategy(StrategyKind(args.strategy), utilities=utilities, threshold=args.threshold,
                    act_costs=act_costs)


def cmd_check_axioms(args, rng: np.random.Generator) -> CommandResult:
    bundle, tol = _load(args.file)
    dp = _require(bundle, "decision_problem", "check-axioms")
    strategy = _strategy(args)
    values: Dict[str, List[Dict[str, float]]] = {}
    for label in dp.macrostates.labels:
        if dp.acts_at(label):
            values[label] = [preference_order(strategy, dp, label, state, tol).values
                             for state in sample_states(dp, label)]
    get_audit_logger().log_check_started("axioms", strategy.name)
    reports = run_suite(
        dp, strategy, rng, bundle.diachronic, bundle.contexts,
        delta=args.delta, n_perturbations=args.perturbations, trials=args.trials,
        include_macrostate_indifference=args.include_macrostate_indifference or None, tol=tol,
    )
    for report in reports:
        _log_check(report.axiom, report.passed, strategy=strategy.name)
        for witness in report.witnesses:
            get_audit_logger().log_finding(report.axiom, witness, strategy.name)
    sections = {
        "strategy": strategy.name,
        "values": values,
        "axioms": [r.to_dict() for r in reports],
    }
    return CommandResult(sections, not suite_passed(reports), tol)


def _demo_arguments(args) -> Dict[str, Any]:
    arguments = {
        "coeffs": parse_float_list(args.coeffs) if args.coeffs else None,
        "remeasure": args.remeasure or None,
        "offset": args.offset,
        "distinct_targets": args.distinct_targets or None,
        "single_reward": args.single_reward or None,
        "n": args.n,
        "steps": args.steps,
        "width": args.width,
        "shift": args.shift,
        "epsilon": args.epsilon,
    }
    if args.name not in DEMO_INPUTS:
        raise CliError(f"unknown demo '{args.name}' (try list-demos)")
    given = {k: v for k, v in arguments.items() if v is not None}
    stray = sorted(set(given) - set(DEMO_INPUTS[args.name].model_fields))
    if stray:
        raise CliError(f"demo '{args.name}' does not take {', '.join('--' + s.replace('_', '-') for s in stray)}")
    return given


def cmd_demo(args, rng: np.random.Generator) -> CommandResult:
    arguments = _demo_arguments(args)
    result = get_registry().execute(args.name, arguments, rng)
    get_audit_logger().log_demo(args.name, arguments, result.findings)
    return CommandResult({"demo": args.name, "options": arguments, "result": result.report}, result.findings)


def cmd_measure(args, rng: np.random.Generator) -> CommandResult:
    bundle, tol = _load(args.file)
    dp = _require(bundle, "decision_problem", "measure")
    state = bundle.state if bundle.state is not None else sample_states(dp, dp.macrostates.labels[0])[0]
    cells = dp.macrostates
    chain = consecutive_grains(cells, parse_int_list(args.grain_chain), tol)
    profile = born_weights(state, cells)
    stability = count_stability(state, chain, args.threshold, tol)
    sections: Dict[str, Any] = {
        "profile": profile.to_dict(),
        "branch_count": branch_count(state, cells, args.threshold),
        "count_stability": stability.to_dict(),
    }
    if args.good or args.bad:
        good = [s for s in (args.good or "").split(",") if s]
        bad = [s for s in (args.bad or "").split(",") if s]
        sections["ratio"] = measure_ratio(profile, good, bad, tol).to_dict()
    _log_check("count_stability", stability.stable)
    return CommandResult(sections, not stability.stable, tol)


def cmd_list_demos(args, rng: np.random.Generator) -> CommandResult:
    return CommandResult({"demos": get_registry().get_schemas()}, False)


def cmd_export(args, rng: np.random.Generator) -> CommandResult:
    arguments = _demo_arguments(args)
    result = get_registry().execute(args.name, arguments, rng)
    if result.bundle is None:
        raise ScenarioError(f"demo '{args.name}' has no scenario to export")
    return CommandResult(scenario_document(result.bundle), False)


COMMANDS = {
    "check-consistency": cmd_check_consistency,
    "check-richness": cmd_check_richness,
    "check-axioms": cmd_check_axioms,
    "demo": cmd_demo,
    "measure": cmd_measure,
    "list-demos": cmd_list_demos,
    "export": cmd_export,
}


def _log_check(check: str, passed: bool, details: Optional[dict] = None, strategy: Optional[str] = None):
    get_audit_logger().log_check_result(check, bool(passed), strategy=strategy, metadata=details)


# Output

def _cell(value: Any) -> Any:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, default=_to_builtin)
    return value


def report_tables(report: Dict[str, Any]) -> Dict[str, Tuple[List[str], List[Dict[str, Any]]]]:
    """One table per top-level section: lists of records become rows, mappings
    become key/value rows, nested values are JSON-encoded cells."""
    tables = {}
    for name, section in sorted(report.items()):
        if name == "header":
            continue
        if isinstance(section, list) and all(isinstance(row, dict) for row in section):
            header = sorted({key for row in section for key in row})
            rows = [{k: _cell(row.get(k)) for k in header} for row in section]
        elif isinstance(section, dict):
            header = ["key", "value"]
            rows = [{"key": k, "value": _cell(v)} for k, v in sorted(section.items())]
        else:
            header = ["value"]
            rows = [{"value": _cell(section)}]
        tables[name] = (header, rows)
    return tables


def write_csv(report: Dict[str, Any], directory: Path) -> List[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, (header, rows) in report_tables(report).items():
        path = directory / f"{name}.csv"
        with path.open("w", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=header)
            writer.writeheader()
            writer.writerows(rows)
        written.append(path)
    return written


def print_summary(command: str, report: Dict[str, Any], findings: bool):
    """Pass/fail panel on stderr; stdout carries only the JSON report."""
    table = Table(show_header=True)
    table.add_column("Check", style="cyan")
    table.add_column("Result")
    for entry in report.get("axioms", []):
        table.add_row(entry["axiom"], "[green]pass[/green]" if entry["pass"] else "[red]fail[/red]")
    for name, result in report.get("richness", {}).get("conditions", {}).items():
        table.add_row(name, "[green]pass[/green]" if result["passed"] else "[red]fail[/red]")
    status = "[bold red]findings[/bold red]" if findings else "[bold green]all checks pass[/bold green]"
    body = Table.grid()
    body.add_row(status)
    if table.row_count:
        body.add_row(table)
    console.print(Panel(body, title=f"branchlab {command}", border_style="red" if findings else "green"))


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--out", "-o", help="Write the JSON report to this file (default: stdout)")
    common.add_argument("--csv", help="Also write one CSV table per report section into this directory")
    common.add_argument("--seed", type=int, default=None,
                        help="Seed of the random generator (default: BRANCHLAB_SEED or 0)")
    common.add_argument("--quiet", "-q", action="store_true", help="Skip the summary panel")

    demo_options = ArgumentParser(add_help=False)
    demo_options.add_argument("name", help="Demo name (see list-demos)")
    demo_options.add_argument("--coeffs", help="measurement: comma-separated amplitudes, e.g. 3,4")
    demo_options.add_argument("--remeasure", action="store_true", help="measurement: read the basis twice")
    demo_options.add_argument("--offset", type=float, help="erasure: angle between the two targets")
    demo_options.add_argument("--distinct-targets", action="store_true", help="erasure: orthogonal targets")
    demo_options.add_argument("--single-reward", action="store_true",
                              help="reward-availability: one reward spanning the space")
    demo_options.add_argument("--n", type=int, help="spreading-tail, pointer-decomp: grid size")
    demo_options.add_argument("--steps", type=int, help="spreading-tail: propagator steps")
    demo_options.add_argument("--width", type=float, help="pointer-decomp: pointer width")
    demo_options.add_argument("--shift", type=float, help="pointer-decomp: offset of the second frame")
    demo_options.add_argument("--epsilon", type=float, help="imprecise-bet: weight of the unintended branch")

    parser = ArgumentParser(
        prog="branchlab",
        description="BranchLab - consistent histories, quantum decision problems and their axioms",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Exit codes: 0 all checks pass, 2 violations found, 1 input error.

Examples:
  python -m app.cli demo erasure
  python -m app.cli demo measurement --coeffs 3,4
  python -m app.cli export abc-bets --out abc.json
  python -m app.cli check-axioms abc.json --strategy born_eu
        """,
    )
    sub = parser.add_subparsers(dest="command", parser_class=ArgumentParser)

    p = sub.add_parser("check-consistency", parents=[common], help="Consistency and branching of a history space")
    p.add_argument("file")
    p.add_argument("--weight-floor", type=float, default=None, help="Skip histories lighter than this")

    p = sub.add_parser("check-richness", parents=[common], help="Richness conditions of a decision problem")
    p.add_argument("file")
    p.add_argument("--problem-continuity", action="store_true", help="Also test openness of the act lists")
    p.add_argument("--delta", type=float, default=1e-3, help="Perturbation size")

    p = sub.add_parser("check-axioms", parents=[common], help="Preference axioms under one strategy")
    p.add_argument("file")
    p.add_argument("--strategy", required=True, choices=[k.value for k in StrategyKind])
    p.add_argument("--utilities", help="reward=value,... (default: the scenario's utilities)")
    p.add_argument("--act-costs", help="process_cost: act=cost,...")
    p.add_argument("--threshold", type=float, default=1e-6, help="Counting threshold")
    p.add_argument("--delta", type=float, default=1e-3, help="Perturbation size for solution continuity")
    p.add_argument("--perturbations", type=int, default=10, help="Perturbations per act pair")
    p.add_argument("--trials", type=int, default=50, help="Transported tuples for state supervenience")
    p.add_argument("--include-macrostate-indifference", action="store_true")

    sub.add_parser("demo", parents=[common, demo_options], help="Run a built-in demonstration")

    p = sub.add_parser("measure", parents=[common], help="Branch measures of the scenario state")
    p.add_argument("file")
    p.add_argument("--grain-chain", required=True, help="Grain sizes coarse to fine, e.g. 8,4,2,1")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD, help="Counting threshold")
    p.add_argument("--good", help="Comma-separated macrostates in the numerator of the ratio")
    p.add_argument("--bad", help="Comma-separated macrostates in the denominator of the ratio")

    sub.add_parser("list-demos", parents=[common], help="List the built-in demonstrations")
    sub.add_parser("export", parents=[common, demo_options], help="Write a demo's scenario as a scenario file")
    return parser


def _arguments_for_log(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if v is not None and k != "command"}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse, dispatch and write the report. Returns the exit code."""
    audit = get_audit_logger()
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise CliError("missing command (try --help)")
    except CliError as e:
        console.print(f"[red]error:[/red] {e}")
        audit.log_error(str(e), {"argv": list(argv) if argv is not None else sys.argv[1:]})
        return EXIT_INPUT_ERROR

    seed = args.seed if args.seed is not None else DEFAULT_SEED
    audit.log_command(args.command, _arguments_for_log(args), seed)
    rng = np.random.default_rng(seed)
    try:
        result = COMMANDS[args.command](args, rng)
    except (BranchLabError, CliError, ValueError, KeyError, IndexError) as e:
        message = e.message if isinstance(e, BranchLabError) else str(e).strip("'\"")
        console.print(f"[red]error:[/red] {message}")
        audit.log_error(message, {"command": args.command})
        return EXIT_INPUT_ERROR

    findings = result.findings
    if args.command == "export":
        report = result.sections
    else:
        report = {
            "header": {
                "command": args.command,
                "seed": seed,
                "tolerances": result.tolerances.model_dump(),
                "version": __version__,
            },
            **result.sections,
        }

    text = dump_json(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.csv and args.command != "export":
        write_csv(report, Path(args.csv))
    if not args.quiet:
        print_summary(args.command, report, findings)
    return EXIT_FINDINGS if findings else EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""
Euler Factor CLI

Minimum-length factorizations of rotations and minimum-switch bang-bang
schedules, driven by JSON payloads.

Usage:
    euler-factor sequence payload.json          # z/f sequences for a rho
    echo '{"rho": 2}' | euler-factor sequence   # payload from stdin
    euler-factor factor targets.json --jobs 4   # batch of targets
    euler-factor sphere-path p.json --format csv
    euler-factor config                         # show settings
"""
import argparse
import sys
from functools import partial
from pathlib import Path
from typing import Any, Callable, Dict

import numpy as np

from . import __version__, ui
from .canonical import canonicalize
from .commands import COMMANDS, SIMPLE_COMMANDS, CommandKey
from .config import (
    get_config_path,
    get_default_jobs,
    get_samples_per_segment,
    get_tolerances,
    load_config,
    reset_config,
    Tolerances,
)
from .control import parallel_map, propagate, propagate_state, sphere_path, synthesize
from .errors import DependentGenerators, InputError, InternalSolverFailure
from .factorizer import Factorization, factor_minimal, factor_pair, residual_norm
from .minimality import build_sequence, min_factors
from .parser import (
    parse_complex_matrix,
    parse_factors,
    parse_int,
    parse_matrix,
    parse_scalar,
    parse_schedule,
    parse_skew,
    parse_state,
    parse_su,
    parse_system,
    read_payload,
    validate_payload,
)
from .so3 import SOUTH_POLE, validate_rotation
from .su2 import factor_su2

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEPENDENT = 3
EXIT_SOLVER = 4


# ============================================================
# COMMAND RUNNERS (payload -> document)
# ============================================================

def factorization_document(F: Factorization, target) -> dict:
    return {
        "count": len(F),
        "factors": [{"axis": f.axis.value, "parameter": f.parameter} for f in F.factors],
        "residual_norm": residual_norm(F, target),
    }


def _bloch(state: np.ndarray) -> np.ndarray:
    """Bloch vector of a two-level state (norm |state|^2)."""
    a, b = state
    cross = np.conj(a) * b
    return np.array([2.0 * cross.real, 2.0 * cross.imag, abs(a) ** 2 - abs(b) ** 2])


def _trajectory(samples, quantum: bool = False) -> list:
    rows = []
    for t, x in samples:
        x = _bloch(x) if quantum else x
        rows.append({"t": t, "x": float(x[0]), "y": float(x[1]), "z": float(x[2])})
    return rows


def run_canonicalize(payload: dict, tol: Tolerances) -> dict:
    pair = canonicalize(parse_skew(payload["z1"], "z1"), parse_skew(payload["z2"], "z2"), tol)
    return {
        "T": pair.T,
        "lambda1": pair.lambda1,
        "a": pair.a,
        "d": pair.d,
        "rho": pair.rho,
        "psi": pair.psi,
    }


def run_sequence(payload: dict, tol: Tolerances) -> dict:
    seq = build_sequence(parse_scalar(payload["rho"], "rho"), tol)
    return {"rho": seq.rho, "z": list(seq.z), "f": list(seq.f), "kbar": seq.kbar, "beta": seq.beta}


def run_min_count(payload: dict, tol: Tolerances) -> dict:
    target = parse_matrix(payload["target"], "target")
    decision = min_factors(target, parse_scalar(payload["rho"], "rho"), tol)
    return {"count": decision.count, "last_axis": decision.last_axis.value, "ktilde": decision.ktilde}


def run_factor(payload: dict, tol: Tolerances) -> dict:
    target = validate_rotation(parse_matrix(payload["target"], "target"), tol)
    if "rho" in payload:
        F = factor_minimal(target, parse_scalar(payload["rho"], "rho"), tol)
    else:
        F = factor_pair(target, parse_skew(payload["z1"], "z1"), parse_skew(payload["z2"], "z2"), tol)
    return factorization_document(F, target)


def run_lift_su2(payload: dict, tol: Tolerances) -> dict:
    target = parse_complex_matrix(payload["target"], "target")
    F = factor_su2(target, parse_su(payload["z1"], "z1"), parse_su(payload["z2"], "z2"), tol)
    return factorization_document(F, target)


def run_synthesize(payload: dict, tol: Tolerances) -> dict:
    system = parse_system(payload)
    if system.is_quantum:
        target = parse_complex_matrix(payload["target"], "target")
    else:
        target = parse_matrix(payload["target"], "target")
    schedule = synthesize(system, target, tol)
    return {
        "segments": [{"u": s.u, "duration": s.duration} for s in schedule.segments],
        "switches": schedule.switches,
        "residual_norm": float(np.linalg.norm(propagate(system, schedule) - target)),
    }


def _samples_per_segment(payload: dict) -> int:
    if "samples_per_segment" in payload:
        return parse_int(payload["samples_per_segment"], "samples_per_segment", minimum=1)
    return get_samples_per_segment()


def run_simulate(payload: dict, tol: Tolerances) -> dict:
    system = parse_system(payload)
    schedule = parse_schedule(payload["segments"], system)
    if "x0" in payload:
        x0 = parse_state(payload["x0"], system)
    else:
        x0 = np.array([1.0, 0.0], dtype=complex) if system.is_quantum else SOUTH_POLE
    final = propagate(system, schedule)
    samples = propagate_state(system, schedule, x0, _samples_per_segment(payload))
    return {
        "final": ui.complex_pairs(final) if system.is_quantum else final,
        "trajectory": _trajectory(samples, quantum=system.is_quantum),
    }


def run_sphere_path(payload: dict, tol: Tolerances) -> dict:
    samples_per_segment = _samples_per_segment(payload)
    if "factors" in payload:
        F = Factorization(parse_scalar(payload["rho"], "rho"), parse_factors(payload["factors"]))
        samples = sphere_path(F, samples_per_segment)
    else:
        system = parse_system(payload)
        if system.is_quantum:
            raise InputError("sphere-path needs an so(3) system")
        schedule = parse_schedule(payload["segments"], system)
        samples = propagate_state(system, schedule, SOUTH_POLE, samples_per_segment)
    return {"samples": _trajectory(samples)}


RUNNERS: Dict[str, Callable[[dict, Tolerances], dict]] = {
    CommandKey.CANONICALIZE: run_canonicalize,
    CommandKey.SEQUENCE: run_sequence,
    CommandKey.MIN_COUNT: run_min_count,
    CommandKey.FACTOR: run_factor,
    CommandKey.LIFT_SU2: run_lift_su2,
    CommandKey.SYNTHESIZE: run_synthesize,
    CommandKey.SIMULATE: run_simulate,
    CommandKey.SPHERE_PATH: run_sphere_path,
}


def run_one(key: str, payload: Any, tol: Tolerances) -> dict:
    """Validate a payload against the command and run it."""
    validate_payload(COMMANDS[key], payload)
    return RUNNERS[key](payload, tol)


# ============================================================
# COMMAND HANDLERS
# ============================================================

def read_input(source: str) -> Any:
    """Payload from a file path, or stdin for '-'."""
    if source == "-":
        return read_payload(sys.stdin.read())
    try:
        return read_payload(Path(source).read_text(encoding="utf-8"))
    except OSError as e:
        raise InputError(f"Cannot read payload {source}: {e}") from e


def cmd_payload(args) -> int:
    """Run a payload command, element-wise for batch payloads."""
    cmd_def = COMMANDS[args.command]
    tol = get_tolerances(args.tol)
    payload = read_input(args.input)

    if isinstance(payload, list) and cmd_def.batch:
        jobs = args.jobs if args.jobs is not None else get_default_jobs()
        document = parallel_map(partial(run_one, args.command, tol=tol), payload, jobs)
    else:
        document = run_one(args.command, payload, tol)

    if args.format == "csv":
        rows = None
        if isinstance(document, dict):
            rows = document.get("samples") or document.get("trajectory")
        if rows is None:
            raise InputError(f"--format csv is only available for {CommandKey.SIMULATE} and {CommandKey.SPHERE_PATH}")
        ui.write_csv([(r["t"], r["x"], r["y"], r["z"]) for r in rows])
    elif args.pretty:
        ui.show_document(cmd_def.name, document)
    else:
        ui.emit(document)
    return EXIT_OK


def cmd_config(args) -> int:
    """Show or reset the configuration."""
    if args.reset:
        reset_config()
        ui.console.print(f"[green]Configuration reset:[/green] {get_config_path()}")
        return EXIT_OK
    config = load_config()
    if args.pretty:
        ui.show_config(config, str(get_config_path()))
    else:
        ui.emit(config)
    return EXIT_OK


def positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text}") from None
    if not value > 0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"must be a positive finite number: {text}")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", "-v", action="store_true", help="Log solver details to stderr")
    common.add_argument("--pretty", action="store_true", help="Render results as tables")

    parser = argparse.ArgumentParser(
        prog="euler-factor",
        description="Euler Factor - generalized Euler angles and bang-bang synthesis",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    for key, cmd_def in COMMANDS.items():
        sub = subparsers.add_parser(
            key,
            parents=[common],
            help=cmd_def.description,
            description=f"{cmd_def.description}\n\npayload: {cmd_def.display_keys}\nexample: {cmd_def.example}",
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        sub.add_argument("input", nargs="?", default="-", help="Payload file (default: stdin)")
        sub.add_argument("--tol", type=positive_float, help="Scale all tolerances relative to 1e-9")
        sub.add_argument("--format", choices=["json", "csv"], default="json", help="Output format")
        if cmd_def.batch:
            sub.add_argument("--jobs", "-j", type=positive_int, help="Workers for batch payloads")
        sub.set_defaults(func=cmd_payload, jobs=None)

    name, description = SIMPLE_COMMANDS[CommandKey.CONFIG]
    config_parser = subparsers.add_parser(name, parents=[common], help=description)
    config_parser.add_argument("--reset", action="store_true", help="Write the default configuration")
    config_parser.set_defaults(func=cmd_config)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_INPUT

    ui.setup_logging(args.verbose)
    try:
        return args.func(args)
    except InternalSolverFailure as e:
        ui.emit({"error": str(e), "diagnostics": e.diagnostics}, stream=sys.stderr)
        return EXIT_SOLVER
    except DependentGenerators as e:
        ui.show_error(str(e))
        return EXIT_DEPENDENT
    except InputError as e:
        ui.show_error(str(e))
        return EXIT_INPUT
    except (ArithmeticError, ValueError) as e:
        # finite but extreme numbers that overflow inside the solvers
        ui.show_error(f"Numerical input out of range: {e}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""
Euler Factor Payload Parser

Decodes command payloads (JSON documents) into matrices, generators,
factorizations and control schedules. Everything that is malformed raises
InputError before any computation runs.
"""
import json
import math
from typing import Any, Tuple

import numpy as np

from .canonical import Axis
from .commands import CommandDefinition
from .control import BilinearSystem, ControlSchedule, Segment
from .errors import InputError
from .factorizer import Factor
from .so3 import SkewGenerator
from .su2 import SuGenerator

SKEW_KEYS = ("c12", "c13", "c23")
SU_KEYS = ("bx", "by", "bz")


def read_payload(text: str) -> Any:
    """Parse a JSON document; NaN and Infinity are rejected."""
    def reject_constant(name):
        raise InputError(f"Non-finite number {name} in payload")

    try:
        return json.loads(text, parse_constant=reject_constant)
    except json.JSONDecodeError as e:
        raise InputError(f"Malformed JSON: {e}") from e


def validate_payload(cmd_def: CommandDefinition, payload: Any) -> Tuple[str, ...]:
    """Check the payload keys against the command; return the matched key set."""
    if not isinstance(payload, dict):
        raise InputError(f"{cmd_def.name} payload must be a JSON object")
    for keys in cmd_def.key_sets:
        if all(k in payload for k in keys):
            allowed = set(keys) | set(cmd_def.optional)
            unknown = sorted(set(payload) - allowed)
            if unknown:
                raise InputError(f"Unknown keys for {cmd_def.name}: {', '.join(unknown)}")
            return keys
    raise InputError(f"{cmd_def.name} payload needs keys {cmd_def.display_keys}")


# ============================================================
# SCALARS AND MATRICES
# ============================================================

def parse_scalar(value: Any, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{name} must be a number")
    value = float(value)
    if not math.isfinite(value):
        raise InputError(f"{name} must be finite")
    return value


def parse_int(value: Any, name: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{name} must be an integer")
    if value < minimum:
        raise InputError(f"{name} must be at least {minimum}")
    return value


def parse_vector(value: Any, name: str, size: int = 3) -> np.ndarray:
    if not isinstance(value, list) or len(value) != size:
        raise InputError(f"{name} must be an array of {size} numbers")
    return np.array([parse_scalar(v, name) for v in value])


def parse_matrix(value: Any, name: str) -> np.ndarray:
    """Row-major 3x3 real matrix."""
    if not isinstance(value, list) or len(value) != 3:
        raise InputError(f"{name} must be a 3x3 array")
    return np.vstack([parse_vector(row, name) for row in value])


def parse_complex(value: Any, name: str) -> complex:
    if not isinstance(value, list) or len(value) != 2:
        raise InputError(f"{name} entries must be [re, im] pairs")
    return complex(parse_scalar(value[0], name), parse_scalar(value[1], name))


def parse_complex_matrix(value: Any, name: str) -> np.ndarray:
    """Row-major 2x2 complex matrix of [re, im] pairs."""
    if not isinstance(value, list) or len(value) != 2:
        raise InputError(f"{name} must be a 2x2 array of [re, im] pairs")
    rows = []
    for row in value:
        if not isinstance(row, list) or len(row) != 2:
            raise InputError(f"{name} must be a 2x2 array of [re, im] pairs")
        rows.append([parse_complex(entry, name) for entry in row])
    return np.array(rows, dtype=complex)


def is_su2_value(value: Any) -> bool:
    """True for an su(2) generator object or a 2x2 complex matrix."""
    if isinstance(value, dict):
        return any(k in value for k in SU_KEYS)
    return isinstance(value, list) and len(value) == 2


# ============================================================
# GENERATORS
# ============================================================

def _coefficient_object(value: dict, keys: Tuple[str, ...], name: str) -> Tuple[float, ...]:
    unknown = sorted(set(value) - set(keys))
    if unknown:
        raise InputError(f"{name} has unknown coefficients: {', '.join(unknown)}")
    return tuple(parse_scalar(value.get(k, 0.0), f"{name}.{k}") for k in keys)


def parse_skew(value: Any, name: str) -> SkewGenerator:
    """so(3) generator from {"c12", "c13", "c23"} or a 3x3 skew matrix."""
    if isinstance(value, dict):
        return SkewGenerator.from_coefficients(_coefficient_object(value, SKEW_KEYS, name))
    return SkewGenerator.from_matrix(parse_matrix(value, name))


def parse_su(value: Any, name: str) -> SuGenerator:
    """su(2) generator from {"bx", "by", "bz"} or a 2x2 complex matrix."""
    if isinstance(value, dict):
        return SuGenerator.from_coefficients(_coefficient_object(value, SU_KEYS, name))
    return SuGenerator.from_matrix(parse_complex_matrix(value, name))


# ============================================================
# FACTORS, SYSTEMS, SCHEDULES
# ============================================================

def parse_axis(value: Any) -> Axis:
    try:
        return Axis(value)
    except ValueError:
        raise InputError(f"axis must be \"Z1\" or \"Z2\", got {value!r}") from None


def parse_factors(value: Any) -> Tuple[Factor, ...]:
    if not isinstance(value, list):
        raise InputError("factors must be an array")
    factors = []
    for item in value:
        if not isinstance(item, dict) or set(item) != {"axis", "parameter"}:
            raise InputError("each factor must be {\"axis\", \"parameter\"}")
        factors.append(Factor(parse_axis(item["axis"]), parse_scalar(item["parameter"], "parameter")))
    return tuple(factors)


def parse_system(payload: dict) -> BilinearSystem:
    """BilinearSystem from the A, B, M, N keys; A and B must be of the same kind."""
    quantum = is_su2_value(payload["A"])
    parse = parse_su if quantum else parse_skew
    return BilinearSystem(
        A=parse(payload["A"], "A"),
        B=parse(payload["B"], "B"),
        M=parse_scalar(payload["M"], "M"),
        N=parse_scalar(payload["N"], "N"),
    )


def parse_schedule(value: Any, system: BilinearSystem) -> ControlSchedule:
    if not isinstance(value, list):
        raise InputError("segments must be an array")
    segments = []
    for item in value:
        if not isinstance(item, dict) or set(item) != {"u", "duration"}:
            raise InputError("each segment must be {\"u\", \"duration\"}")
        u = parse_scalar(item["u"], "u")
        duration = parse_scalar(item["duration"], "duration")
        if duration < 0:
            raise InputError("segment durations must be nonnegative")
        if u not in (system.M, system.N):
            raise InputError(f"control value {u} is neither M nor N")
        segments.append(Segment(u, duration))
    return ControlSchedule(tuple(segments))


def parse_state(value: Any, system: BilinearSystem) -> np.ndarray:
    """Initial state: 3 reals for SO(3), 2 [re, im] pairs for SU(2)."""
    if system.is_quantum:
        if not isinstance(value, list) or len(value) != 2:
            raise InputError("x0 must be 2 [re, im] pairs")
        return np.array([parse_complex(v, "x0") for v in value], dtype=complex)
    return parse_vector(value, "x0")

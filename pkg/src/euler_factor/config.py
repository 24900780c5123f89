"""
Euler Factor Configuration

Handles loading/saving user config and the tolerance context shared by all solvers.
"""
import copy
import math
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional

try:
    import tomllib  # Python 3.11+
except ImportError:
    import tomli as tomllib

import tomli_w

from .errors import InputError


# ============================================================
# PATHS
# ============================================================

def get_config_dir() -> Path:
    """Get the config directory path (~/.euler_factor)."""
    return Path.home() / ".euler_factor"


def get_config_path() -> Path:
    """Get the config file path (~/.euler_factor/config.toml)."""
    return get_config_dir() / "config.toml"


def ensure_config_dir():
    """Create the config directory if it doesn't exist."""
    get_config_dir().mkdir(parents=True, exist_ok=True)


def config_exists() -> bool:
    """Check if config file exists."""
    return get_config_path().exists()


# ============================================================
# TOLERANCES
# ============================================================

# Reference value of the CLI --tol flag; every tolerance scales by tol / TOL_REFERENCE.
TOL_REFERENCE = 1e-9


@dataclass(frozen=True)
class Tolerances:
    """Every numerical threshold used by the solvers, in one place."""

    validation: float = 1e-9  # orthogonality / unitarity checks
    snap: float = 1e-9  # boundary snapping in the order function
    step: float = 1e-10  # one-parameter solves and factor normalization
    reconstruction: float = 1e-8  # Frobenius residual accepted by the factorizer
    dependence: float = 1e-9  # relative |d| threshold for dependent generators
    sequence: float = 1e-12  # f_k >= 1 termination slack
    tangency: float = 1e-7  # overshoot clipped to a tangency in one-parameter solves
    conjugation: float = 1e-8  # skew / anti-Hermitian check after a change of frame
    degeneracy: float = 1e-12  # radii and angles below this count as zero

    def scaled(self, factor: float) -> "Tolerances":
        """Return a copy with every tolerance multiplied by factor."""
        if factor <= 0:
            raise ValueError(f"Tolerance scale must be positive, got {factor}")
        return replace(self, **{f.name: getattr(self, f.name) * factor for f in fields(self)})


DEFAULT_TOLERANCES = Tolerances()


# ============================================================
# DEFAULT VALUES
# ============================================================

DEFAULT_CONFIG = {
    "tolerances": {f.name: getattr(DEFAULT_TOLERANCES, f.name) for f in fields(Tolerances)},
    "cli": {
        "jobs": 1,
        "samples_per_segment": 16,
    },
}


# ============================================================
# CONFIG LOADING/SAVING
# ============================================================

_config_cache: Optional[dict] = None


def _positive_float(name: str, value) -> float:
    if isinstance(value, bool):
        raise InputError(f"Config value {name} must be a number, got {value!r}")
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise InputError(f"Config value {name} must be a number, got {value!r}") from None
    if not (math.isfinite(number) and number > 0):
        raise InputError(f"Config value {name} must be positive and finite, got {value!r}")
    return number


def _positive_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise InputError(f"Config value {name} must be a positive integer, got {value!r}")
    return value


def _section(user_config: dict, name: str) -> dict:
    section = user_config.get(name, {})
    if not isinstance(section, dict):
        raise InputError(f"Config section [{name}] must be a table")
    return section


def load_config() -> dict:
    """Load config from file, or return defaults if not found.

    Raises InputError when the file is not valid TOML or holds a bad value.
    """
    global _config_cache

    if _config_cache is not None:
        return _config_cache

    config = copy.deepcopy(DEFAULT_CONFIG)

    if config_exists():
        try:
            with open(get_config_path(), "rb") as f:
                user_config = tomllib.load(f)
        except tomllib.TOMLDecodeError as e:
            raise InputError(f"Cannot parse {get_config_path()}: {e}") from e

        # Merge user config with defaults, ignoring unknown keys
        for key, value in _section(user_config, "tolerances").items():
            if key in config["tolerances"]:
                config["tolerances"][key] = _positive_float(f"tolerances.{key}", value)

        for key, value in _section(user_config, "cli").items():
            if key in config["cli"]:
                config["cli"][key] = _positive_int(f"cli.{key}", value)

    _config_cache = config
    return config


def save_config(config: dict):
    """Save config to file."""
    global _config_cache

    ensure_config_dir()

    with open(get_config_path(), "wb") as f:
        tomli_w.dump(config, f)

    _config_cache = config


def reset_config():
    """Write the default config to disk."""
    save_config(copy.deepcopy(DEFAULT_CONFIG))


def clear_config_cache():
    """Clear the config cache (for testing or after config changes)."""
    global _config_cache
    _config_cache = None


# ============================================================
# CONFIG ACCESSORS
# ============================================================

def get_tolerances(tol: Optional[float] = None) -> Tolerances:
    """Get the configured tolerances, optionally rescaled by a --tol value."""
    tolerances = Tolerances(**load_config()["tolerances"])
    if tol is not None:
        tolerances = tolerances.scaled(tol / TOL_REFERENCE)
    return tolerances


def get_default_jobs() -> int:
    """Get the default number of batch workers."""
    return int(load_config()["cli"]["jobs"])


def get_samples_per_segment() -> int:
    """Get the default trajectory sampling density."""
    return int(load_config()["cli"]["samples_per_segment"])

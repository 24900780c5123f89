"""Command definitions - single source of truth for all CLI commands."""
from dataclasses import dataclass, field
from typing import Dict, List, Tuple


class CommandKey:
    """Single source of truth for command keys."""

    CANONICALIZE = "canonicalize"
    SEQUENCE = "sequence"
    MIN_COUNT = "min-count"
    FACTOR = "factor"
    LIFT_SU2 = "lift-su2"
    SYNTHESIZE = "synthesize"
    SIMULATE = "simulate"
    SPHERE_PATH = "sphere-path"
    CONFIG = "config"


@dataclass
class CommandDefinition:
    """Definition for a payload-driven command."""

    name: str  # "factor"
    description: str  # "Minimum-length factorization of a rotation"
    required: Tuple[str, ...]  # payload keys that must be present
    optional: Tuple[str, ...] = ()  # payload keys that may be present
    alternatives: Tuple[Tuple[str, ...], ...] = ()  # other accepted required-key sets
    example: str = ""  # '{"target": [[1,0,0],[0,1,0],[0,0,1]], "rho": 2}'
    batch: bool = False  # whether a JSON array payload is processed element-wise
    outputs: List[str] = field(default_factory=list)

    @property
    def key_sets(self) -> Tuple[Tuple[str, ...], ...]:
        return (self.required,) + self.alternatives

    @property
    def display_keys(self) -> str:
        """Payload keys as shown in help and README."""
        return " | ".join("{" + ", ".join(keys) + "}" for keys in self.key_sets)


# Registry of all payload commands
COMMANDS: Dict[str, CommandDefinition] = {
    CommandKey.CANONICALIZE: CommandDefinition(
        name=CommandKey.CANONICALIZE,
        description="Reduce a generator pair to (S12, rho*S12 + S23)",
        required=("z1", "z2"),
        example='{"z1": {"c12": 1}, "z2": {"c12": 1, "c23": 1}}',
        outputs=["T", "lambda1", "a", "d", "rho", "psi"],
    ),
    CommandKey.SEQUENCE: CommandDefinition(
        name=CommandKey.SEQUENCE,
        description="z/f sequences, kbar and beta for a rho",
        required=("rho",),
        example='{"rho": 2}',
        outputs=["rho", "z", "f", "kbar", "beta"],
    ),
    CommandKey.MIN_COUNT: CommandDefinition(
        name=CommandKey.MIN_COUNT,
        description="Minimum number of factors for a target",
        required=("target", "rho"),
        example='{"target": [[1,0,0],[0,1,0],[0,0,1]], "rho": 2}',
        batch=True,
        outputs=["count", "last_axis", "ktilde"],
    ),
    CommandKey.FACTOR: CommandDefinition(
        name=CommandKey.FACTOR,
        description="Minimum-length factorization of a rotation",
        required=("target", "rho"),
        alternatives=(("target", "z1", "z2"),),
        example='{"target": [[1,0,0],[0,1,0],[0,0,1]], "rho": 1}',
        batch=True,
        outputs=["count", "factors", "residual_norm"],
    ),
    CommandKey.LIFT_SU2: CommandDefinition(
        name=CommandKey.LIFT_SU2,
        description="Minimum-length factorization of an SU(2) target",
        required=("target", "z1", "z2"),
        example='{"target": [[[1,0],[0,0]],[[0,0],[1,0]]], "z1": {"bz": 1}, "z2": {"bx": 1}}',
        outputs=["count", "factors", "residual_norm"],
    ),
    CommandKey.SYNTHESIZE: CommandDefinition(
        name=CommandKey.SYNTHESIZE,
        description="Minimum-switch bang-bang schedule reaching a target",
        required=("A", "B", "M", "N", "target"),
        example='{"A": {"c23": 1}, "B": {"c12": 1}, "M": 1, "N": -1, "target": [[1,0,0],[0,1,0],[0,0,1]]}',
        batch=True,
        outputs=["segments", "switches", "residual_norm"],
    ),
    CommandKey.SIMULATE: CommandDefinition(
        name=CommandKey.SIMULATE,
        description="Exact propagation of a schedule",
        required=("A", "B", "M", "N", "segments"),
        optional=("x0", "samples_per_segment"),
        example='{"A": {"c23": 1}, "B": {"c12": 1}, "M": 1, "N": -1, "segments": [{"u": 1, "duration": 0.5}]}',
        outputs=["final", "trajectory"],
    ),
    CommandKey.SPHERE_PATH: CommandDefinition(
        name=CommandKey.SPHERE_PATH,
        description="Path of the South Pole along a factorization or schedule",
        required=("rho", "factors"),
        alternatives=(("A", "B", "M", "N", "segments"),),
        optional=("samples_per_segment",),
        example='{"rho": 1, "factors": [{"axis": "Z2", "parameter": 1.0}]}',
        outputs=["samples"],
    ),
}

# Commands that take no payload
SIMPLE_COMMANDS = {
    CommandKey.CONFIG: (CommandKey.CONFIG, "Show or reset the configuration"),
}

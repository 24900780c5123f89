"""
Minimum number of factors.

The z/f recurrences describe how high on the sphere the South Pole can be
carried with a given number of switches; the order function turns them into
the factor count of a target whose optimal factorization ends with Z1, and
the reflection covers targets ending with Z2.
"""
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .canonical import Axis, tilde_reflection
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import InputError, InternalSolverFailure
from .so3 import RotationMatrix, log_rot, random_rotation, validate_rotation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinSequence:
    """The finite sequences z_0..z_kbar and f_0..f_kbar for one rho."""

    rho: float
    z: Tuple[float, ...]
    f: Tuple[float, ...]
    kbar: int
    beta: float


@dataclass(frozen=True)
class MinDecision:
    """Minimum factor count, the axis of the rightmost factor, and the index k~."""

    count: int
    last_axis: Axis
    ktilde: int = 0


# Sequences longer than this are refused; kbar grows like pi*|rho|/2.
MAX_SEQUENCE_TERMS = 1_000_000


def _max_terms(rho: float) -> int:
    # beta >= 2 / sqrt(1 + rho^2), and z_k = -cos(k beta) passes 1 before k beta > pi
    return int(2.0 * math.hypot(1.0, rho)) + 5


def build_sequence(rho: float, tol: Tolerances = DEFAULT_TOLERANCES) -> MinSequence:
    """Iterate the z/f recurrences from z_0 = f_0 = -1 until f_k >= 1."""
    if rho == 0 or not math.isfinite(rho):
        raise InputError(f"build_sequence needs a finite nonzero rho, got {rho}")

    r = abs(rho)
    limit = _max_terms(r)
    if limit > MAX_SEQUENCE_TERMS:
        raise InputError(
            f"rho = {rho} is too large: the z/f sequence would need about {limit / 2:.3g} terms"
        )

    # 2 r^2 / (1 + r^2), written so that r^2 cannot overflow
    gain = 2.0 / (1.0 + (1.0 / r) ** 2) if r >= 1.0 else 2.0 * r * r / (1.0 + r * r)
    z = [-1.0]
    f = [-1.0]

    while f[-1] < 1.0 - tol.sequence:
        if len(z) > limit:
            raise InternalSolverFailure(
                "z/f recurrence did not terminate", {"rho": rho, "terms": len(z)}
            )
        z_next = gain * f[-1] - z[-1]
        root = math.sqrt(max(0.0, 1.0 - z_next * z_next))
        z.append(z_next)
        f.append(root / r + z_next)

    # arccos((r^2 - 1) / (r^2 + 1))
    beta = 2.0 * math.atan2(1.0, r)
    return MinSequence(rho=rho, z=tuple(z), f=tuple(f), kbar=len(z) - 1, beta=beta)


def order_value(
    X_f: RotationMatrix, seq: MinSequence, tol: Tolerances = DEFAULT_TOLERANCES
) -> Tuple[int, int]:
    """Factor count of X_f when its optimal factorization ends with a Z1 factor.

    Returns (count, ktilde). Comparisons within tol.snap of a boundary resolve
    toward the smaller count.
    """
    eps = tol.snap
    rho = seq.rho
    x13, x33 = float(X_f[0, 2]), float(X_f[2, 2])

    if x33 >= 1.0 - eps:
        return 1, 0

    height = -x33
    if height <= seq.z[1] + eps:
        if abs(x13 - rho * (1.0 - x33)) <= eps:
            return 2, 0
        return 3, 0

    ktilde = max(k for k, zk in enumerate(seq.z) if zk < height - eps)
    if math.copysign(1.0, rho) * x13 >= -abs(rho) * (x33 + seq.f[ktilde]) - eps:
        return 2 * ktilde + 2, ktilde
    return 2 * ktilde + 3, ktilde


def is_identity(X_f: RotationMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """True when X_f is a rotation by less than the step tolerance."""
    return log_rot(X_f, tol.degeneracy)[1] <= tol.step


def min_factors(
    X_f: RotationMatrix, rho: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> MinDecision:
    """MIN(X_f): the smaller of the direct and the reflected order values."""
    X_f = validate_rotation(X_f, tol)
    if is_identity(X_f, tol):
        return MinDecision(0, Axis.Z1, 0)

    if rho == 0:
        from .factorizer import classical_euler

        factorization = classical_euler(X_f, tol)
        return MinDecision(len(factorization), factorization.factors[-1].axis, 0)

    seq = build_sequence(rho, tol)
    reflection = tilde_reflection(rho)
    direct = order_value(X_f, seq, tol)
    reflected = order_value(reflection @ X_f @ reflection.T, seq, tol)
    logger.debug("order values: direct=%s reflected=%s", direct, reflected)

    if direct[0] <= reflected[0]:
        return MinDecision(direct[0], Axis.Z1, direct[1])
    return MinDecision(reflected[0], Axis.Z2, reflected[1])


def order_bound(rho: float, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    """Upper bound of the order function: 3 for orthogonal generators, else 2*kbar + 3."""
    if rho == 0:
        return 3
    return 2 * build_sequence(rho, tol).kbar + 3


def sampled_order(
    rho: float, samples: int = 1000, seed: int = 0, tol: Tolerances = DEFAULT_TOLERANCES
) -> int:
    """Largest MIN over a deterministic sample of uniformly random targets."""
    rng = np.random.default_rng(seed)
    return max(min_factors(random_rotation(rng), rho, tol).count for _ in range(samples))

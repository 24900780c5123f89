"""
Explicit minimum-length factorizations (generalized Euler angles).

A factorization X_f = e^{Z1 t1} e^{Z2 t2} ... is built from a backbone of
half-turns that carries the South Pole P_s up the ladder of circles described
by the z/f recurrences, followed by one-parameter closed-form solves:

- odd count: a Z2 factor reaches the height of P_f, a Z1 factor aligns the
  azimuth, and the rightmost Z1 factor absorbs the residual;
- even count: the Z1 factor moves the top of the backbone to a point P-bar on
  the Z2-circle through P_f, a Z2 factor reaches P_f, and the rightmost Z1
  factor absorbs the residual.

Targets whose optimal factorization ends with Z2 are reflected, factored and
mapped back.
"""
import logging
import math
from dataclasses import dataclass, replace
from functools import reduce
from typing import TYPE_CHECKING, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .canonical import (
    Axis,
    canonical_generators,
    canonical_param_to_original,
    canonicalize,
    tilde_reflection,
    to_canonical_target,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import InternalSolverFailure
from .minimality import build_sequence, is_identity, order_value
from .so3 import (
    SOUTH_POLE,
    TWO_PI,
    RotationMatrix,
    SkewGenerator,
    Vector3,
    align_about,
    solve_height,
    validate_rotation,
    wrap,
    z_rotation_angle,
)

if TYPE_CHECKING:
    from .su2 import SuGenerator

logger = logging.getLogger(__name__)

Generator = Union[SkewGenerator, "SuGenerator"]

# Conjugation by the x-axis half-turn maps rho to -rho and Z1 to -Z1.
X_HALF_TURN = np.diag([1.0, -1.0, -1.0])


@dataclass(frozen=True)
class Factor:
    axis: Axis
    parameter: float


@dataclass(frozen=True, eq=False)
class Factorization:
    """Ordered factors, leftmost first, of X_f = e^{Z_a1 t1} e^{Z_a2 t2} ...

    Without explicit generators the factors refer to the canonical pair
    (S12, rho*S12 + S23).
    """

    rho: float
    factors: Tuple[Factor, ...] = ()
    z1: Optional[Generator] = None
    z2: Optional[Generator] = None

    def generator(self, axis: Axis) -> Generator:
        if self.z1 is None:
            return canonical_generators(self.rho)[0 if axis is Axis.Z1 else 1]
        return self.z1 if axis is Axis.Z1 else self.z2

    def period(self, axis: Axis) -> float:
        return self.generator(axis).period

    def with_factors(self, factors: Sequence[Factor]) -> "Factorization":
        return replace(self, factors=tuple(factors))

    def __len__(self) -> int:
        return len(self.factors)


def reconstruct(F: Factorization) -> np.ndarray:
    """Left-to-right product of the factors' exponentials."""
    identity = F.generator(Axis.Z1).identity()
    return reduce(
        lambda acc, factor: acc @ F.generator(factor.axis).exp(factor.parameter),
        F.factors,
        identity,
    )


def residual_norm(F: Factorization, X_f: np.ndarray) -> float:
    """Frobenius distance between the reconstruction and the target."""
    return float(np.linalg.norm(reconstruct(F) - X_f))


def normalize(F: Factorization, tol: Tolerances = DEFAULT_TOLERANCES) -> Factorization:
    """Reduce parameters mod period, merge same-axis neighbours, drop trivial factors.

    A factor is trivial when its rotation angle is within tol.step of a full turn.
    """
    out: List[Factor] = []
    for factor in F.factors:
        period = F.period(factor.axis)
        snap = tol.step * period / TWO_PI
        parameter = wrap(factor.parameter, period)
        if out and out[-1].axis is factor.axis:
            parameter = wrap(out.pop().parameter + parameter, period)
        if parameter < snap or period - parameter < snap:
            continue
        out.append(Factor(factor.axis, parameter))
    return F.with_factors(out)


def map_back_reflected(F: Factorization, tol: Tolerances = DEFAULT_TOLERANCES) -> Factorization:
    """Turn a factorization of T~ X_f T~^T into one of X_f by conjugating each factor."""
    s = math.hypot(1.0, F.rho)
    mapped = [
        Factor(Axis.Z2, -factor.parameter / s)
        if factor.axis is Axis.Z1
        else Factor(Axis.Z1, -s * factor.parameter)
        for factor in F.factors
    ]
    return normalize(F.with_factors(mapped), tol)


# ============================================================
# CONSTRUCTION (rho > 0, rightmost factor Z1)
# ============================================================

def _product(F: Factorization, factors: Sequence[Factor]) -> RotationMatrix:
    return reconstruct(F.with_factors(factors))


def _half_turns(rho: float, axes: Sequence[Axis]) -> List[Factor]:
    """Rotations by angle pi about each listed axis."""
    z2_half = math.pi / math.hypot(1.0, rho)
    return [Factor(axis, math.pi if axis is Axis.Z1 else z2_half) for axis in axes]


def _plane_points(
    P_f: Vector3, rho: float, height: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> List[Vector3]:
    """Points of the Z2-circle through P_f at the given height (0, 1 or 2 of them)."""
    x = P_f[0] + rho * (P_f[2] - height)
    disc = 1.0 - height * height - x * x
    if disc < -tol.tangency:
        return []
    y = math.sqrt(max(disc, 0.0))
    points = [np.array([x, y, height])]
    if y > tol.degeneracy:
        points.append(np.array([x, -y, height]))
    return points


def _heads(
    X_f: RotationMatrix, rho: float, count: int, tol: Tolerances
) -> Iterator[List[Factor]]:
    """Every branch of the construction, without the rightmost Z1 factor."""
    base = Factorization(rho)
    Z1, Z2 = canonical_generators(rho)
    P_f = X_f @ SOUTH_POLE

    if count % 2 == 1:
        ktilde = (count - 3) // 2
        backbone = _half_turns(rho, [Axis.Z1, Axis.Z2] * ktilde)
        B = _product(base, backbone)
        for t2 in solve_height(Z2, B @ SOUTH_POLE, P_f[2], tol):
            L = Z2.exp(t2) @ B
            t1 = align_about(Z1, L @ SOUTH_POLE, P_f, tol.degeneracy)
            yield [Factor(Axis.Z1, t1), Factor(Axis.Z2, t2)] + backbone
    else:
        ktilde = (count - 2) // 2
        axes = [Axis.Z2, Axis.Z1] * ktilde
        backbone = _half_turns(rho, axes[:-1])
        B = _product(base, backbone)
        top = B @ SOUTH_POLE
        for P_bar in _plane_points(P_f, rho, top[2], tol):
            t2 = align_about(Z1, top, P_bar, tol.degeneracy)
            L = Z1.exp(t2) @ B
            t1 = align_about(Z2, L @ SOUTH_POLE, P_f, tol.degeneracy)
            yield [Factor(Axis.Z2, t1), Factor(Axis.Z1, t2)] + backbone


def _candidates(
    X_f: RotationMatrix, rho: float, count: int, tol: Tolerances
) -> Iterator[Tuple[Factorization, float]]:
    """Normalized branch factorizations with their reconstruction residuals."""
    base = Factorization(rho)
    if count == 1:
        F = normalize(base.with_factors([Factor(Axis.Z1, z_rotation_angle(X_f))]), tol)
        yield F, residual_norm(F, X_f)
        return

    for head in _heads(X_f, rho, count, tol):
        W = _product(base, head)
        t_s = z_rotation_angle(W.T @ X_f)
        F = normalize(base.with_factors(head + [Factor(Axis.Z1, t_s)]), tol)
        yield F, residual_norm(F, X_f)


def _factor_z1_last(
    X_f: RotationMatrix, rho: float, count: int, tol: Tolerances
) -> Optional[Factorization]:
    for F, residual in _candidates(X_f, rho, count, tol):
        if residual < tol.reconstruction and len(F) == count:
            return F
        logger.debug("rejected branch: length=%d residual=%.3e", len(F), residual)
    return None


def classical_euler(X_f: RotationMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> Factorization:
    """Orthogonal generators (rho = 0): shortest of the Z1-Z2-Z1 and Z2-Z1-Z2 resolutions."""
    reflection = tilde_reflection(0.0)
    best: Optional[Factorization] = None
    for axis in (Axis.Z1, Axis.Z2):
        Y = X_f if axis is Axis.Z1 else reflection @ X_f @ reflection.T
        for F, residual in _candidates(Y, 0.0, 3, tol):
            if residual >= tol.reconstruction:
                continue
            if axis is Axis.Z2:
                F = map_back_reflected(F, tol)
            if best is None or len(F) < len(best):
                best = F
    if best is None:
        raise InternalSolverFailure(
            "classical Euler resolution failed", {"target": X_f.tolist(), "rho": 0.0}
        )
    return best


def factor_minimal(
    X_f: RotationMatrix, rho: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> Factorization:
    """Minimum-length factorization of X_f over the canonical pair for rho."""
    X_f = validate_rotation(X_f, tol)
    if is_identity(X_f, tol):
        return Factorization(rho)
    if rho == 0:
        return classical_euler(X_f, tol)
    if rho < 0:
        mirrored = factor_minimal(X_HALF_TURN @ X_f @ X_HALF_TURN, -rho, tol)
        factors = [
            Factor(f.axis, -f.parameter if f.axis is Axis.Z1 else f.parameter)
            for f in mirrored.factors
        ]
        return normalize(Factorization(rho, tuple(factors)), tol)

    seq = build_sequence(rho, tol)
    reflection = tilde_reflection(rho)
    reflected_target = reflection @ X_f @ reflection.T
    direct = order_value(X_f, seq, tol)[0]
    reflected = order_value(reflected_target, seq, tol)[0]
    count = min(direct, reflected)

    if direct == count:
        F = _factor_z1_last(X_f, rho, count, tol)
        if F is not None:
            return F
    if reflected == count:
        F = _factor_z1_last(reflected_target, rho, count, tol)
        if F is not None:
            return map_back_reflected(F, tol)

    raise InternalSolverFailure(
        "no branch reproduced the target within tolerance",
        {"target": X_f.tolist(), "rho": rho, "count": count},
    )


def factor_pair(
    X_f: RotationMatrix,
    Z1: SkewGenerator,
    Z2: SkewGenerator,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Factorization:
    """Minimum-length factorization over an arbitrary independent pair, in original durations."""
    X_f = validate_rotation(X_f, tol)
    pair = canonicalize(Z1, Z2, tol)
    canonical = factor_minimal(to_canonical_target(X_f, pair), pair.rho, tol)
    factors = [
        Factor(f.axis, canonical_param_to_original(f.axis, f.parameter, pair))
        for f in canonical.factors
    ]
    return normalize(Factorization(pair.rho, tuple(factors), z1=Z1, z2=Z2), tol)

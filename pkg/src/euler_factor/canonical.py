"""
Canonical form of a generator pair.

Any linearly independent pair (Z1, Z2) is conjugated by a rotation T and
rescaled into Z1 = S12, Z2 = rho*S12 + S23. This module records the
frame and the scalings, and provides the reflection that swaps the roles of
the two generators.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import DependentGenerators, InputError
from .so3 import (
    OrthogonalMatrix,
    RotationMatrix,
    SkewGenerator,
    conjugate,
    cos_angle_psi,
    exp_rot,
    s_basis,
    wrap,
)

S12 = s_basis(1, 2)
S23 = s_basis(2, 3)


class Axis(str, Enum):
    """Which of the two one-parameter subgroups a factor belongs to."""

    Z1 = "Z1"
    Z2 = "Z2"

    @property
    def other(self) -> "Axis":
        return Axis.Z2 if self is Axis.Z1 else Axis.Z1


def canonical_generators(rho: float) -> Tuple[SkewGenerator, SkewGenerator]:
    """The canonical pair (S12, rho*S12 + S23)."""
    return S12, rho * S12 + S23


@dataclass(frozen=True, eq=False)
class CanonicalPair:
    """Frame T = T2 T1 and scalings with T Z1 T^T = lambda1 S12, T Z2 T^T = a S12 + d S23."""

    T: RotationMatrix
    lambda1: float
    a: float
    d: float
    rho: float
    psi: float
    z1: SkewGenerator
    z2: SkewGenerator

    def scale(self, axis: Axis) -> float:
        return self.lambda1 if axis is Axis.Z1 else self.d

    def original_period(self, axis: Axis) -> float:
        """Period of e^{Z t} for the original (unscaled, unrotated) generator."""
        if axis is Axis.Z1:
            return 2.0 * math.pi / abs(self.lambda1)
        return 2.0 * math.pi / (abs(self.d) * math.hypot(1.0, self.rho))

    def original(self, axis: Axis) -> SkewGenerator:
        return self.z1 if axis is Axis.Z1 else self.z2


def _kernel_frame(Z1: SkewGenerator) -> np.ndarray:
    """Rows v1, v2, v3 of T1: v3 spans the kernel of Z1, right-handed basis."""
    w = Z1.axis_vector()
    v3 = w / Z1.speed
    # cross with the coordinate axis least aligned with v3
    v1 = np.cross(np.eye(3)[int(np.argmin(np.abs(v3)))], v3)
    v1 = v1 / np.linalg.norm(v1)
    v2 = np.cross(v3, v1)
    return np.vstack([v1, v2, v3])


def canonicalize(
    Z1: SkewGenerator, Z2: SkewGenerator, tol: Tolerances = DEFAULT_TOLERANCES
) -> CanonicalPair:
    """Reduce (Z1, Z2) to the canonical pair (S12, rho*S12 + S23)."""
    if Z1.is_zero():
        raise InputError("Z1 must be nonzero")
    if Z2.is_zero():
        raise DependentGenerators("Z2 is zero")

    T1 = _kernel_frame(Z1)
    partial = conjugate(T1, Z2, tol.conjugation)
    theta = math.atan2(-partial.c13, partial.c23)
    T = exp_rot(S12, theta) @ T1

    lambda1 = conjugate(T, Z1, tol.conjugation).c12
    rotated = conjugate(T, Z2, tol.conjugation)
    if abs(rotated.c23) <= tol.dependence * Z2.speed:
        raise DependentGenerators(
            f"Generators are linearly dependent (|d| = {abs(rotated.c23):.3e})"
        )
    if (rotated.c23 > 0) != (lambda1 > 0):
        # theta + pi also solves b cos + c sin = 0; it flips d and keeps lambda1
        T = exp_rot(S12, math.pi) @ T
        rotated = conjugate(T, Z2, tol.conjugation)

    a, d = rotated.c12, rotated.c23
    return CanonicalPair(
        T=T,
        lambda1=lambda1,
        a=a,
        d=d,
        rho=a / d,
        psi=cos_angle_psi(Z1, Z2),
        z1=Z1,
        z2=Z2,
    )


def tilde_reflection(rho: float) -> OrthogonalMatrix:
    """Symmetric orthogonal involution (det -1) exchanging Z1 and Z2 up to scale and sign."""
    s = math.hypot(1.0, rho)
    return np.array([
        [-rho / s, 0.0, 1.0 / s],
        [0.0, 1.0, 0.0],
        [1.0 / s, 0.0, rho / s],
    ])


def to_canonical_target(X_f: RotationMatrix, pair: CanonicalPair) -> RotationMatrix:
    """T X_f T^T."""
    return pair.T @ X_f @ pair.T.T


def canonical_param_to_original(axis: Axis, theta: float, pair: CanonicalPair) -> float:
    """Duration tau >= 0 of the original subgroup matching parameter theta of the canonical one."""
    return wrap(theta / pair.scale(axis), pair.original_period(axis))


def canonical_pair_generators(pair: CanonicalPair) -> Tuple[SkewGenerator, SkewGenerator]:
    """(lambda1 S12, a S12 + d S23): the original pair expressed in the canonical frame."""
    return pair.lambda1 * S12, pair.a * S12 + pair.d * S23

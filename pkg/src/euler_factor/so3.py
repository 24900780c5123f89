"""
Rotation and skew-matrix algebra on SO(3).

Skew generators are stored as coefficients on the basis S12, S13, S23, so a
realized matrix is skew-symmetric by construction. Rotations, orthogonal
matrices and points on the sphere are plain 3x3 / length-3 numpy arrays.
"""
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import InputError

RotationMatrix = np.ndarray
OrthogonalMatrix = np.ndarray
Vector3 = np.ndarray

TWO_PI = 2.0 * math.pi

# The South Pole, fixed by every e^{S12 t}.
SOUTH_POLE = np.array([0.0, 0.0, -1.0])

_BASIS_INDEX = {(1, 2): 0, (1, 3): 1, (2, 3): 2}


@dataclass(frozen=True)
class SkewGenerator:
    """Element c12*S12 + c13*S13 + c23*S23 of so(3)."""

    c12: float = 0.0
    c13: float = 0.0
    c23: float = 0.0

    dim = 3

    @classmethod
    def from_coefficients(cls, coefficients) -> "SkewGenerator":
        c12, c13, c23 = (float(c) for c in coefficients)
        return cls(c12, c13, c23)

    @classmethod
    def from_axis(cls, w) -> "SkewGenerator":
        """Generator whose flow rotates about w at angular rate |w|."""
        w1, w2, w3 = (float(c) for c in w)
        return cls(-w3, w2, -w1)

    @classmethod
    def from_matrix(cls, m, tol: float = DEFAULT_TOLERANCES.validation) -> "SkewGenerator":
        """Read the coefficients of a 3x3 matrix, which must be skew-symmetric."""
        m = np.asarray(m, dtype=float)
        if m.shape != (3, 3):
            raise InputError(f"Expected a 3x3 matrix, got shape {m.shape}")
        if np.max(np.abs(m + m.T)) > tol * max(1.0, np.max(np.abs(m))):
            raise InputError("Matrix is not skew-symmetric")
        return cls(m[0, 1], m[0, 2], m[1, 2])

    def coefficients(self) -> np.ndarray:
        return np.array([self.c12, self.c13, self.c23])

    def matrix(self) -> np.ndarray:
        return np.array([
            [0.0, self.c12, self.c13],
            [-self.c12, 0.0, self.c23],
            [-self.c13, -self.c23, 0.0],
        ])

    def axis_vector(self) -> Vector3:
        """Angular velocity vector w with Z v = w x v."""
        return np.array([-self.c23, self.c13, -self.c12])

    @property
    def speed(self) -> float:
        """Angular rate of e^{Zt}."""
        return math.hypot(self.c12, self.c13, self.c23)

    @property
    def period(self) -> float:
        speed = self.speed
        return TWO_PI / speed if speed > 0 else math.inf

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.speed <= tol

    def exp(self, t: float) -> RotationMatrix:
        return exp_rot(self, t)

    def identity(self) -> RotationMatrix:
        return np.eye(3)

    def bracket(self, other: "SkewGenerator") -> "SkewGenerator":
        a, b = self.matrix(), other.matrix()
        return SkewGenerator.from_matrix(a @ b - b @ a)

    def __add__(self, other: "SkewGenerator") -> "SkewGenerator":
        return SkewGenerator(self.c12 + other.c12, self.c13 + other.c13, self.c23 + other.c23)

    def __sub__(self, other: "SkewGenerator") -> "SkewGenerator":
        return self + (-other)

    def __neg__(self) -> "SkewGenerator":
        return SkewGenerator(-self.c12, -self.c13, -self.c23)

    def __mul__(self, scalar: float) -> "SkewGenerator":
        return SkewGenerator(self.c12 * scalar, self.c13 * scalar, self.c23 * scalar)

    __rmul__ = __mul__


ZERO_GENERATOR = SkewGenerator()


# ============================================================
# BASIS, EXPONENTIAL, LOGARITHM
# ============================================================

def s_basis(h: int, k: int) -> SkewGenerator:
    """The basis matrix S_hk: +1 at (h,k), -1 at (k,h), 1-indexed, h < k."""
    if (h, k) not in _BASIS_INDEX:
        raise InputError(f"Invalid basis index pair ({h}, {k}); expected (1,2), (1,3) or (2,3)")
    coefficients = [0.0, 0.0, 0.0]
    coefficients[_BASIS_INDEX[(h, k)]] = 1.0
    return SkewGenerator.from_coefficients(coefficients)


def exp_rot(Z: SkewGenerator, t: float) -> RotationMatrix:
    """e^{Zt} by the axis-angle closed form."""
    speed = Z.speed
    angle = speed * t
    if speed == 0.0 or angle == 0.0:
        return np.eye(3)
    K = Z.matrix() / speed
    half = math.sin(0.5 * angle)
    return np.eye(3) + math.sin(angle) * K + (2.0 * half * half) * (K @ K)


def _vee(m: np.ndarray) -> Vector3:
    return np.array([m[2, 1], m[0, 2], m[1, 0]])


def _fix_half_turn_sign(axis: Vector3) -> Vector3:
    coefficients = SkewGenerator.from_axis(axis).coefficients()
    if coefficients[np.argmax(np.abs(coefficients))] < 0:
        return -axis
    return axis


def log_rot(
    X: RotationMatrix, tol: float = DEFAULT_TOLERANCES.degeneracy
) -> Tuple[SkewGenerator, float]:
    """Unit-speed axis generator and angle in [0, pi] with exp_rot(axis, angle) = X."""
    X = np.asarray(X, dtype=float)
    cos_angle = float(np.clip(0.5 * (np.trace(X) - 1.0), -1.0, 1.0))
    skew_part = _vee(0.5 * (X - X.T))
    sin_angle = float(np.linalg.norm(skew_part))
    angle = math.atan2(sin_angle, cos_angle)

    if angle <= tol:
        return ZERO_GENERATOR, 0.0

    if cos_angle > -0.5:
        axis = skew_part / sin_angle
    else:
        # Near a half-turn the skew part vanishes; use the symmetric part.
        outer = (0.5 * (X + X.T) - cos_angle * np.eye(3)) / (1.0 - cos_angle)
        j = int(np.argmax(np.diag(outer)))
        axis = outer[:, j] / math.sqrt(max(outer[j, j], 1e-300))
        if sin_angle > tol and float(axis @ skew_part) < 0:
            axis = -axis
        elif sin_angle <= tol:
            angle = math.pi
            axis = _fix_half_turn_sign(axis)
    axis = axis / np.linalg.norm(axis)
    return SkewGenerator.from_axis(axis), angle


# ============================================================
# INNER PRODUCT
# ============================================================

def inner(Z1: SkewGenerator, Z2: SkewGenerator) -> float:
    """Trace(Z1 Z2^T)."""
    return 2.0 * float(Z1.coefficients() @ Z2.coefficients())


def cos_angle_psi(Z1: SkewGenerator, Z2: SkewGenerator) -> float:
    """Cosine of the angle between two nonzero generators."""
    s1, s2 = Z1.speed, Z2.speed
    if s1 == 0.0 or s2 == 0.0:
        raise InputError("cos_angle_psi needs two nonzero generators")
    cosine = float((Z1.coefficients() / s1) @ (Z2.coefficients() / s2))
    return max(-1.0, min(1.0, cosine))


def conjugate(
    Q: np.ndarray, Z: SkewGenerator, tol: float = DEFAULT_TOLERANCES.conjugation
) -> SkewGenerator:
    """Q Z Q^T for an orthogonal Q."""
    return SkewGenerator.from_matrix(Q @ Z.matrix() @ Q.T, tol=tol)


# ============================================================
# VALIDATION
# ============================================================

def _as_matrix(X, name: str) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.shape != (3, 3):
        raise InputError(f"{name} must be 3x3, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise InputError(f"{name} has non-finite entries")
    return X


def validate_orthogonal(T, tol: Tolerances = DEFAULT_TOLERANCES) -> OrthogonalMatrix:
    """Return T as an array if T^T T = I within tolerance."""
    T = _as_matrix(T, "Orthogonal matrix")
    if np.max(np.abs(T.T @ T - np.eye(3))) >= tol.validation:
        raise InputError("Matrix is not orthogonal within tolerance")
    return T


def validate_rotation(X, tol: Tolerances = DEFAULT_TOLERANCES) -> RotationMatrix:
    """Return X as an array if it is orthogonal with positive determinant."""
    X = _as_matrix(X, "Rotation matrix")
    if np.max(np.abs(X.T @ X - np.eye(3))) >= tol.validation:
        raise InputError("Matrix is not orthogonal within tolerance")
    if np.linalg.det(X) <= 0:
        raise InputError("Matrix has negative determinant")
    return X


def random_rotation(rng: np.random.Generator) -> RotationMatrix:
    """Uniformly distributed rotation (Haar measure) from a random unit quaternion."""
    q = rng.standard_normal(4)
    w, x, y, z = q / np.linalg.norm(q)
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
        [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
        [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
    ])


# ============================================================
# ONE-PARAMETER SOLVERS
# ============================================================

def wrap(t: float, period: float) -> float:
    """Reduce t into [0, period)."""
    r = t % period
    return 0.0 if r >= period else r


def solve_height(
    Z: SkewGenerator, p: Vector3, height: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> List[float]:
    """All t in [0, period) with the z-coordinate of e^{Zt} p equal to height.

    The condition reduces to A cos(theta) + B sin(theta) = height - C with
    theta = speed * t; both atan2 roots are returned (one when they coincide).
    A ratio overshooting [-1, 1] by at most tol.tangency is clipped to the tangency.
    """
    speed = Z.speed
    n = Z.axis_vector() / speed
    axial = float(n @ p)
    A = p[2] - n[2] * axial
    B = float(np.cross(n, p)[2])
    C = n[2] * axial
    R = math.hypot(A, B)
    if R < tol.degeneracy:
        return [0.0] if abs(C - height) <= tol.tangency else []
    ratio = (height - C) / R
    if abs(ratio) > 1.0 + tol.tangency:
        return []
    ratio = max(-1.0, min(1.0, ratio))
    phase = math.atan2(B, A)
    spread = math.acos(ratio)
    roots = []
    for theta in (phase - spread, phase + spread):
        t = wrap(theta / speed, Z.period)
        if all(abs(t - r) > tol.degeneracy * Z.period for r in roots):
            roots.append(t)
    return roots


def align_about(
    Z: SkewGenerator, p: Vector3, q: Vector3, tol: float = DEFAULT_TOLERANCES.degeneracy
) -> float:
    """t in [0, period) with e^{Zt} p = q, for points at the same axial height."""
    speed = Z.speed
    n = Z.axis_vector() / speed
    p_perp = p - n * float(n @ p)
    q_perp = q - n * float(n @ q)
    if np.linalg.norm(p_perp) < tol or np.linalg.norm(q_perp) < tol:
        return 0.0
    theta = math.atan2(float(n @ np.cross(p_perp, q_perp)), float(p_perp @ q_perp))
    return wrap(theta / speed, Z.period)


def z_rotation_angle(M: RotationMatrix) -> float:
    """Parameter t of e^{S12 t} read from a rotation about the z-axis."""
    return wrap(math.atan2(M[0, 1], M[0, 0]), TWO_PI)

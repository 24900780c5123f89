"""
SU(2) through the double cover.

su(2) elements are stored as coefficients on the basis

    S_x = [[0, -i], [-i, 0]],  S_y = [[0, -1], [1, 0]],  S_z = [[-i, 0], [0, i]]

which satisfies [S_x, S_y] = 2 S_z (cyclic). The Lie algebra isomorphism
phi_tilde sends S_x, S_y, S_z to 2 S13, 2 S23, -2 S12, and the covering map
phi: SU(2) -> SO(3) is the adjoint action read in that basis.
"""
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .canonical import Axis
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import InputError, InternalSolverFailure
from .factorizer import Factor, Factorization, factor_pair, normalize, reconstruct
from .so3 import RotationMatrix, SkewGenerator

logger = logging.getLogger(__name__)

Unitary2 = np.ndarray

_S_X = np.array([[0.0, -1j], [-1j, 0.0]])
_S_Y = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)
_S_Z = np.array([[-1j, 0.0], [0.0, 1j]])

# Coordinates (bx, by, bz) -> axis-vector coordinates of phi_tilde, up to the factor 2.
_PI = np.array([
    [0.0, -1.0, 0.0],
    [1.0, 0.0, 0.0],
    [0.0, 0.0, 1.0],
])


@dataclass(frozen=True)
class SuGenerator:
    """Element bx*S_x + by*S_y + bz*S_z of su(2)."""

    bx: float = 0.0
    by: float = 0.0
    bz: float = 0.0

    dim = 2

    @classmethod
    def from_coefficients(cls, coefficients) -> "SuGenerator":
        bx, by, bz = (float(c) for c in coefficients)
        return cls(bx, by, bz)

    @classmethod
    def from_matrix(cls, m, tol: float = DEFAULT_TOLERANCES.validation) -> "SuGenerator":
        """Read the coefficients of a traceless anti-Hermitian 2x2 matrix."""
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise InputError(f"Expected a 2x2 matrix, got shape {m.shape}")
        scale = max(1.0, float(np.max(np.abs(m))))
        if np.max(np.abs(m + m.conj().T)) > tol * scale:
            raise InputError("Matrix is not anti-Hermitian")
        if abs(np.trace(m)) > tol * scale:
            raise InputError("Matrix is not traceless")
        return cls(-m[0, 1].imag, -m[0, 1].real, -m[0, 0].imag)

    def coefficients(self) -> np.ndarray:
        return np.array([self.bx, self.by, self.bz])

    def matrix(self) -> np.ndarray:
        return self.bx * _S_X + self.by * _S_Y + self.bz * _S_Z

    @property
    def speed(self) -> float:
        """Modulus of the eigenvalues of the realized matrix."""
        return math.hypot(self.bx, self.by, self.bz)

    @property
    def period(self) -> float:
        speed = self.speed
        return 2.0 * math.pi / speed if speed > 0 else math.inf

    @property
    def half_period(self) -> float:
        """Parameter at which e^{V t} = -I."""
        return 0.5 * self.period

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.speed <= tol

    def exp(self, t: float) -> Unitary2:
        return su_exp(self, t)

    def identity(self) -> Unitary2:
        return np.eye(2, dtype=complex)

    def bracket(self, other: "SuGenerator") -> "SuGenerator":
        a, b = self.matrix(), other.matrix()
        return SuGenerator.from_matrix(a @ b - b @ a)

    def __add__(self, other: "SuGenerator") -> "SuGenerator":
        return SuGenerator(self.bx + other.bx, self.by + other.by, self.bz + other.bz)

    def __sub__(self, other: "SuGenerator") -> "SuGenerator":
        return self + (-other)

    def __neg__(self) -> "SuGenerator":
        return SuGenerator(-self.bx, -self.by, -self.bz)

    def __mul__(self, scalar: float) -> "SuGenerator":
        return SuGenerator(self.bx * scalar, self.by * scalar, self.bz * scalar)

    __rmul__ = __mul__


def pauli_basis() -> Tuple[SuGenerator, SuGenerator, SuGenerator]:
    """(S_x, S_y, S_z)."""
    return SuGenerator(1.0, 0.0, 0.0), SuGenerator(0.0, 1.0, 0.0), SuGenerator(0.0, 0.0, 1.0)


def su_exp(V: SuGenerator, t: float) -> Unitary2:
    """e^{Vt} = cos(|b| t) I + sin(|b| t)/|b| V, since V^2 = -|b|^2 I."""
    speed = V.speed
    if speed == 0.0 or t == 0.0:
        return np.eye(2, dtype=complex)
    angle = speed * t
    return math.cos(angle) * np.eye(2, dtype=complex) + (math.sin(angle) / speed) * V.matrix()


def validate_unitary(U, tol: Tolerances = DEFAULT_TOLERANCES) -> Unitary2:
    """Return U as a complex array if it is unitary with determinant 1."""
    U = np.asarray(U, dtype=complex)
    if U.shape != (2, 2):
        raise InputError(f"Unitary matrix must be 2x2, got shape {U.shape}")
    if not np.all(np.isfinite(U)):
        raise InputError("Unitary matrix has non-finite entries")
    if np.max(np.abs(U @ U.conj().T - np.eye(2))) >= tol.validation:
        raise InputError("Matrix is not unitary within tolerance")
    if abs(np.linalg.det(U) - 1.0) >= tol.validation:
        raise InputError("Matrix does not have determinant 1")
    return U


def random_su2(rng: np.random.Generator) -> Unitary2:
    """Haar-random element of SU(2) from a random unit quaternion."""
    q = rng.standard_normal(4)
    w, x, y, z = q / np.linalg.norm(q)
    return w * np.eye(2, dtype=complex) + SuGenerator(x, y, z).matrix()


# ============================================================
# DOUBLE COVER
# ============================================================

def phi_tilde(V: SuGenerator) -> SkewGenerator:
    """Lie algebra isomorphism su(2) -> so(3)."""
    return SkewGenerator(c12=-2.0 * V.bz, c13=2.0 * V.bx, c23=2.0 * V.by)


def phi_tilde_inverse(Z: SkewGenerator) -> SuGenerator:
    return SuGenerator(bx=0.5 * Z.c13, by=0.5 * Z.c23, bz=-0.5 * Z.c12)


def phi(U: Unitary2, tol: Tolerances = DEFAULT_TOLERANCES) -> RotationMatrix:
    """Covering homomorphism SU(2) -> SO(3); phi(U) = phi(-U)."""
    U = np.asarray(U, dtype=complex)
    U_dagger = U.conj().T
    adjoint = np.column_stack([
        SuGenerator.from_matrix(U @ S.matrix() @ U_dagger, tol=tol.conjugation).coefficients()
        for S in pauli_basis()
    ])
    return _PI @ adjoint @ _PI.T


def factor_su2(
    Xbar_f: Unitary2,
    Zbar1: SuGenerator,
    Zbar2: SuGenerator,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Factorization:
    """Minimum-length factorization of an SU(2) target, exact up to sign.

    The projected SO(3) problem is solved first; if the lifted product comes
    out as -Xbar_f the first factor is advanced by its half-period.
    """
    Xbar_f = validate_unitary(Xbar_f, tol)
    projected = factor_pair(phi(Xbar_f, tol), phi_tilde(Zbar1), phi_tilde(Zbar2), tol)
    F = Factorization(projected.rho, projected.factors, z1=Zbar1, z2=Zbar2)

    product = reconstruct(F)
    if np.linalg.norm(product + Xbar_f) < np.linalg.norm(product - Xbar_f):
        if F.factors:
            first = F.factors[0]
            shift = F.generator(first.axis).half_period
            factors = (Factor(first.axis, first.parameter + shift),) + F.factors[1:]
        else:
            factors = (Factor(Axis.Z1, Zbar1.half_period),)
        logger.debug("sign of the lifted product corrected on %s", factors[0].axis.value)
        F = normalize(F.with_factors(factors), tol)

    residual = float(np.linalg.norm(reconstruct(F) - Xbar_f))
    if residual >= tol.reconstruction:
        raise InternalSolverFailure(
            "lifted factorization does not reproduce the target",
            {"residual": residual, "count": len(F), "rho": F.rho},
        )
    return F


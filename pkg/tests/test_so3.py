"""
Tests for euler_factor.so3 module.
"""
import math

import numpy as np
import pytest


class TestBasis:
    """Tests for s_basis."""

    def test_s12_matrix(self):
        """S12 has +1 at (1,2) and -1 at (2,1)."""
        from euler_factor.so3 import s_basis

        expected = np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 0]], dtype=float)
        assert np.array_equal(s_basis(1, 2).matrix(), expected)

    def test_s23_matrix(self):
        from euler_factor.so3 import s_basis

        expected = np.array([[0, 0, 0], [0, 0, 1], [0, -1, 0]], dtype=float)
        assert np.array_equal(s_basis(2, 3).matrix(), expected)

    def test_s13_matrix(self):
        from euler_factor.so3 import s_basis

        m = s_basis(1, 3).matrix()
        assert m[0, 2] == 1.0
        assert m[2, 0] == -1.0
        assert np.count_nonzero(m) == 2

    @pytest.mark.parametrize("pair", [(2, 1), (1, 1), (0, 1), (3, 4)])
    def test_invalid_pair_raises(self, pair):
        from euler_factor.errors import InputError
        from euler_factor.so3 import s_basis

        with pytest.raises(InputError):
            s_basis(*pair)

    def test_matrix_is_skew(self, rng):
        """Realized matrices are skew-symmetric exactly."""
        from euler_factor.so3 import SkewGenerator

        for _ in range(20):
            Z = SkewGenerator.from_coefficients(rng.standard_normal(3))
            m = Z.matrix()
            assert np.array_equal(m, -m.T)


class TestSkewGenerator:
    """Tests for SkewGenerator arithmetic and helpers."""

    def test_axis_vector_cross_product(self, rng):
        """Z v equals w x v for the axis vector w."""
        from euler_factor.so3 import SkewGenerator

        Z = SkewGenerator.from_coefficients(rng.standard_normal(3))
        v = rng.standard_normal(3)
        assert np.allclose(Z.matrix() @ v, np.cross(Z.axis_vector(), v))

    def test_from_axis_round_trip(self):
        from euler_factor.so3 import SkewGenerator

        Z = SkewGenerator.from_axis([1.0, 2.0, 3.0])
        assert np.allclose(Z.axis_vector(), [1.0, 2.0, 3.0])

    def test_arithmetic(self):
        from euler_factor.so3 import SkewGenerator

        a = SkewGenerator(1.0, 2.0, 3.0)
        b = SkewGenerator(0.5, -1.0, 1.0)
        assert a + b == SkewGenerator(1.5, 1.0, 4.0)
        assert a - b == SkewGenerator(0.5, 3.0, 2.0)
        assert 2 * a == SkewGenerator(2.0, 4.0, 6.0)
        assert -a == SkewGenerator(-1.0, -2.0, -3.0)

    def test_from_matrix_rejects_non_skew(self):
        from euler_factor.errors import InputError
        from euler_factor.so3 import SkewGenerator

        with pytest.raises(InputError):
            SkewGenerator.from_matrix(np.eye(3))

    def test_speed_and_period(self):
        from euler_factor.so3 import SkewGenerator

        Z = SkewGenerator(0.0, 3.0, 4.0)
        assert Z.speed == pytest.approx(5.0)
        assert Z.period == pytest.approx(2 * math.pi / 5)

    def test_speed_does_not_overflow(self):
        from euler_factor.so3 import SkewGenerator

        Z = SkewGenerator(c12=1e200, c13=-1e200, c23=0.0)
        assert Z.speed == pytest.approx(math.sqrt(2) * 1e200)
        assert Z.period > 0

    def test_bracket(self):
        """[S12, S23] = S13."""
        from euler_factor.so3 import s_basis

        assert s_basis(1, 2).bracket(s_basis(2, 3)) == s_basis(1, 3)


class TestExpRot:
    """Tests for exp_rot."""

    def test_zero_time_is_identity(self, rng):
        from euler_factor.so3 import SkewGenerator, exp_rot

        Z = SkewGenerator.from_coefficients(rng.standard_normal(3))
        assert np.array_equal(exp_rot(Z, 0.0), np.eye(3))

    def test_s12_closed_form(self):
        from euler_factor.so3 import exp_rot, s_basis

        t = 0.83
        c, s = math.cos(t), math.sin(t)
        expected = np.array([[c, s, 0], [-s, c, 0], [0, 0, 1]])
        assert np.allclose(exp_rot(s_basis(1, 2), t), expected, atol=1e-14)

    def test_half_turn_about_z2_reaches_equator(self):
        """rho = 1: rotating the South Pole by pi about (1,0,1)/sqrt(2) lands at height 0."""
        from euler_factor.canonical import canonical_generators
        from euler_factor.so3 import SOUTH_POLE

        _, Z2 = canonical_generators(1.0)
        p = Z2.exp(math.pi / math.sqrt(2.0)) @ SOUTH_POLE
        assert p[2] == pytest.approx(0.0, abs=1e-12)

    def test_inverse_and_orthogonality(self, rng):
        from euler_factor.so3 import SkewGenerator, exp_rot

        for _ in range(10_000):
            Z = SkewGenerator.from_coefficients(rng.standard_normal(3) * 3)
            t = rng.uniform(-10, 10)
            X = exp_rot(Z, t)
            assert np.allclose(X @ exp_rot(Z, -t), np.eye(3), atol=1e-10)
            assert np.allclose(X.T @ X, np.eye(3), atol=1e-12)
            assert np.linalg.det(X) == pytest.approx(1.0, abs=1e-12)

    def test_periodicity(self, rng):
        from euler_factor.so3 import SkewGenerator, exp_rot

        for _ in range(100):
            Z = SkewGenerator.from_coefficients(rng.standard_normal(3))
            t = rng.uniform(-5, 5)
            assert np.allclose(exp_rot(Z, t + Z.period), exp_rot(Z, t), atol=1e-10)


class TestLogRot:
    """Tests for log_rot."""

    def test_identity(self):
        from euler_factor.so3 import ZERO_GENERATOR, log_rot

        axis, angle = log_rot(np.eye(3))
        assert axis == ZERO_GENERATOR
        assert angle == 0.0

    def test_round_trip_s12(self):
        from euler_factor.so3 import exp_rot, log_rot, s_basis

        axis, angle = log_rot(exp_rot(s_basis(1, 2), 0.7))
        assert angle == pytest.approx(0.7, abs=1e-12)
        assert np.allclose(axis.coefficients(), [1.0, 0.0, 0.0])

    def test_half_turn_sign_is_deterministic(self):
        """At angle pi the largest-magnitude coefficient is positive."""
        from euler_factor.so3 import exp_rot, log_rot, s_basis

        for Z in (s_basis(2, 3), -s_basis(2, 3)):
            axis, angle = log_rot(exp_rot(Z, math.pi))
            assert angle == pytest.approx(math.pi, abs=1e-12)
            assert np.allclose(axis.coefficients(), [0.0, 0.0, 1.0])

    def test_random_round_trip(self, rng):
        from euler_factor.so3 import SkewGenerator, exp_rot, log_rot

        for _ in range(300):
            Z = SkewGenerator.from_axis(rng.standard_normal(3))
            Z = Z * (1.0 / Z.speed)
            angle = rng.uniform(0.01, math.pi - 0.01)
            X = exp_rot(Z, angle)
            axis, recovered = log_rot(X)
            assert recovered == pytest.approx(angle, abs=1e-9)
            assert np.allclose(exp_rot(axis, recovered), X, atol=1e-10)

    def test_near_half_turn_round_trip(self):
        from euler_factor.so3 import SkewGenerator, exp_rot, log_rot

        Z = SkewGenerator.from_axis(np.array([1.0, -2.0, 2.0]) / 3.0)
        X = exp_rot(Z, math.pi - 1e-6)
        axis, angle = log_rot(X)
        assert np.allclose(exp_rot(axis, angle), X, atol=1e-10)


class TestInnerProduct:
    """Tests for inner and cos_angle_psi."""

    def test_inner_values(self):
        from euler_factor.so3 import ZERO_GENERATOR, inner, s_basis

        S12, S23 = s_basis(1, 2), s_basis(2, 3)
        assert inner(S12, S12) == 2.0
        assert inner(S12, S23) == 0.0
        assert inner(S12, ZERO_GENERATOR) == 0.0

    def test_inner_matches_trace(self, rng):
        from euler_factor.so3 import SkewGenerator, inner

        a = SkewGenerator.from_coefficients(rng.standard_normal(3))
        b = SkewGenerator.from_coefficients(rng.standard_normal(3))
        assert inner(a, b) == pytest.approx(np.trace(a.matrix() @ b.matrix().T))

    def test_psi_examples(self):
        from euler_factor.so3 import cos_angle_psi, s_basis

        S12, S23 = s_basis(1, 2), s_basis(2, 3)
        assert cos_angle_psi(S12, S23) == 0.0
        assert cos_angle_psi(S12, S12 + S23) == pytest.approx(1 / math.sqrt(2))
        assert cos_angle_psi(S23, 3 * S23) == pytest.approx(1.0)

    def test_psi_of_canonical_pair(self, rng):
        from euler_factor.canonical import canonical_generators
        from euler_factor.so3 import cos_angle_psi

        for rho in rng.uniform(-10, 10, size=100):
            Z1, Z2 = canonical_generators(rho)
            assert cos_angle_psi(Z1, Z2) == pytest.approx(rho / math.sqrt(1 + rho ** 2), abs=1e-12)

    def test_psi_with_huge_coefficients(self):
        from euler_factor.so3 import SkewGenerator, cos_angle_psi

        Z1, Z2 = SkewGenerator(c12=1e200), SkewGenerator(c12=1e200, c23=1e200)
        assert cos_angle_psi(Z1, Z2) == pytest.approx(1 / math.sqrt(2))

    def test_zero_generator_raises(self):
        from euler_factor.errors import InputError
        from euler_factor.so3 import ZERO_GENERATOR, cos_angle_psi, s_basis

        with pytest.raises(InputError):
            cos_angle_psi(s_basis(1, 2), ZERO_GENERATOR)


class TestValidation:
    """Tests for validate_rotation and validate_orthogonal."""

    def test_accepts_rotation(self, rng):
        from euler_factor.so3 import random_rotation, validate_rotation

        X = random_rotation(rng)
        assert validate_rotation(X.tolist()) is not None

    def test_rejects_reflection(self):
        from euler_factor.errors import InputError
        from euler_factor.so3 import validate_rotation

        with pytest.raises(InputError):
            validate_rotation(np.diag([1.0, 1.0, -1.0]))

    def test_orthogonal_accepts_reflection(self):
        from euler_factor.so3 import validate_orthogonal

        assert validate_orthogonal(np.diag([1.0, 1.0, -1.0])) is not None

    @pytest.mark.parametrize("bad", [np.eye(2), 2 * np.eye(3), np.full((3, 3), np.nan)])
    def test_rejects_malformed(self, bad):
        from euler_factor.errors import InputError
        from euler_factor.so3 import validate_rotation

        with pytest.raises(InputError):
            validate_rotation(bad)


class TestOneParameterSolvers:
    """Tests for solve_height, align_about and z_rotation_angle."""

    def test_solve_height_roots_reach_height(self, rng):
        from euler_factor.canonical import canonical_generators
        from euler_factor.so3 import SOUTH_POLE, solve_height

        _, Z2 = canonical_generators(0.7)
        for height in (-0.9, -0.5, 0.0, 0.2):
            roots = solve_height(Z2, SOUTH_POLE, height)
            assert roots
            for t in roots:
                assert (Z2.exp(t) @ SOUTH_POLE)[2] == pytest.approx(height, abs=1e-12)

    def test_solve_height_unreachable(self):
        from euler_factor.canonical import canonical_generators
        from euler_factor.so3 import SOUTH_POLE, solve_height

        _, Z2 = canonical_generators(2.0)
        # the Z2 circle through the South Pole tops out at z = -0.6
        assert solve_height(Z2, SOUTH_POLE, 0.9) == []

    def test_solve_height_tangency_follows_tolerance(self):
        from euler_factor.canonical import canonical_generators
        from euler_factor.config import DEFAULT_TOLERANCES
        from euler_factor.so3 import SOUTH_POLE, solve_height

        _, Z2 = canonical_generators(2.0)
        # 1e-6 above the top of the circle (z = -0.6, radius 0.2)
        height = -0.6 + 1e-6
        assert solve_height(Z2, SOUTH_POLE, height) == []

        roots = solve_height(Z2, SOUTH_POLE, height, DEFAULT_TOLERANCES.scaled(1e4))
        assert len(roots) == 1
        assert (Z2.exp(roots[0]) @ SOUTH_POLE)[2] == pytest.approx(-0.6, abs=1e-9)

    def test_align_about(self, rng):
        from euler_factor.canonical import S12
        from euler_factor.so3 import align_about

        p = np.array([0.6, 0.0, -0.8])
        q = S12.exp(1.234) @ p
        t = align_about(S12, p, q)
        assert np.allclose(S12.exp(t) @ p, q, atol=1e-12)

    def test_z_rotation_angle(self):
        from euler_factor.canonical import S12
        from euler_factor.so3 import z_rotation_angle

        assert z_rotation_angle(S12.exp(2.5)) == pytest.approx(2.5)
        assert z_rotation_angle(S12.exp(-0.5)) == pytest.approx(2 * math.pi - 0.5)

    def test_wrap(self):
        from euler_factor.so3 import wrap

        assert wrap(-0.5, 2.0) == pytest.approx(1.5)
        assert wrap(4.5, 2.0) == pytest.approx(0.5)
        assert 0.0 <= wrap(-1e-18, 2.0) < 2.0

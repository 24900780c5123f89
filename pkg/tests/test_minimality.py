"""
Tests for euler_factor.minimality module.
"""
import math
from fractions import Fraction

import numpy as np
import pytest


def exact_sequence(rho: int, terms: int):
    """The z/f recurrences in rational arithmetic (valid while sqrt(1 - z^2) is rational)."""
    z, f = [Fraction(-1)], [Fraction(-1)]
    gain = Fraction(2 * rho * rho, 1 + rho * rho)
    for _ in range(terms):
        z_next = gain * f[-1] - z[-1]
        root_sq = 1 - z_next * z_next
        root = Fraction(math.isqrt(root_sq.numerator), math.isqrt(root_sq.denominator))
        assert root * root == root_sq
        z.append(z_next)
        f.append(root / rho + z_next)
    return z, f


class TestBuildSequence:
    """Tests for build_sequence."""

    def test_rho_two_exact(self):
        from euler_factor.minimality import build_sequence

        seq = build_sequence(2.0)
        assert seq.kbar == 3
        assert seq.z == pytest.approx([-1.0, -0.6, 0.28, 0.936], abs=1e-12)
        assert seq.f == pytest.approx([-1.0, -0.2, 0.76, 1.112], abs=1e-12)

    def test_rho_two_matches_rational_recurrence(self):
        from euler_factor.minimality import build_sequence

        z, f = exact_sequence(2, 3)
        assert z[-1] == Fraction(117, 125)
        seq = build_sequence(2.0)
        for k in range(4):
            assert seq.z[k] == pytest.approx(float(z[k]), abs=1e-12)
            assert seq.f[k] == pytest.approx(float(f[k]), abs=1e-12)

    def test_small_rho_has_kbar_one(self, rng):
        from euler_factor.minimality import build_sequence

        for rho in rng.uniform(1e-3, 1.0, size=100):
            assert build_sequence(rho).kbar == 1

    def test_closed_form_and_gap(self, rng):
        """z_k = -cos(k beta) and consecutive gaps exceed 2/(1+rho^2)."""
        from euler_factor.minimality import build_sequence

        for rho in rng.uniform(1.0001, 10.0, size=100):
            seq = build_sequence(rho)
            assert math.cos(seq.beta) == pytest.approx((rho ** 2 - 1) / (rho ** 2 + 1), abs=1e-12)
            for k, zk in enumerate(seq.z):
                assert abs(zk + math.cos(k * seq.beta)) < 1e-10
            for a, b in zip(seq.z, seq.z[1:]):
                assert b - a > 2 / (1 + rho ** 2) - 1e-12
            assert seq.f[-1] >= 1.0 - 1e-12
            assert all(fk < 1.0 for fk in seq.f[:-1])

    def test_negative_rho_matches_positive(self):
        from euler_factor.minimality import build_sequence

        assert build_sequence(-2.0).z == build_sequence(2.0).z

    @pytest.mark.parametrize("rho", [0.0, math.inf, math.nan])
    def test_invalid_rho(self, rho):
        from euler_factor.errors import InputError
        from euler_factor.minimality import build_sequence

        with pytest.raises(InputError):
            build_sequence(rho)

    @pytest.mark.parametrize("rho", [1e200, -1e200, 1e7])
    def test_huge_rho_is_refused(self, rho):
        from euler_factor.errors import InputError
        from euler_factor.minimality import build_sequence

        with pytest.raises(InputError, match="too large"):
            build_sequence(rho)

    def test_large_rho_terminates(self):
        from euler_factor.minimality import build_sequence

        seq = build_sequence(1e3)
        assert seq.f[-1] >= 1.0 - 1e-12
        assert seq.kbar == pytest.approx(math.pi * 1e3 / 2, rel=0.01)
        assert seq.beta == pytest.approx(math.acos((1e6 - 1) / (1e6 + 1)), rel=1e-6)


class TestOrderValue:
    """Tests for order_value on constructed targets."""

    def test_z1_rotation_is_one(self):
        from euler_factor.canonical import S12
        from euler_factor.minimality import build_sequence, order_value

        assert order_value(S12.exp(1.2), build_sequence(2.0))[0] == 1

    def test_z2_z1_product_is_two(self):
        from euler_factor.canonical import canonical_generators
        from euler_factor.minimality import build_sequence, order_value

        Z1, Z2 = canonical_generators(2.0)
        X = Z2.exp(0.5) @ Z1.exp(0.9)
        assert order_value(X, build_sequence(2.0))[0] == 2

    def test_three_factor_product(self):
        from euler_factor.canonical import canonical_generators
        from euler_factor.minimality import build_sequence, order_value

        Z1, Z2 = canonical_generators(2.0)
        X = Z1.exp(0.3) @ Z2.exp(0.4) @ Z1.exp(0.5)
        assert order_value(X, build_sequence(2.0))[0] == 3

    def test_half_turn_reaching_z2_antipode_is_two(self):
        from euler_factor.canonical import canonical_generators
        from euler_factor.minimality import build_sequence, order_value

        _, Z2 = canonical_generators(1.0)
        X = Z2.exp(math.pi / math.sqrt(2))  # half-turn about (1, 0, 1)/sqrt(2)
        assert X[2, 2] == pytest.approx(0.0, abs=1e-12)
        assert order_value(X, build_sequence(1.0))[0] == 2

    def test_z_rotation_breaks_plane_membership(self):
        from euler_factor.canonical import S12, canonical_generators
        from euler_factor.minimality import build_sequence, order_value

        _, Z2 = canonical_generators(1.0)
        X = S12.exp(1.0) @ Z2.exp(0.4)
        assert order_value(X, build_sequence(1.0))[0] == 3

    def test_bounded(self, random_targets):
        from euler_factor.minimality import build_sequence, order_bound, order_value

        for rho in (0.25, 1.0, 2.0, 5.0):
            seq = build_sequence(rho)
            for X in random_targets:
                count, ktilde = order_value(X, seq)
                assert 1 <= count <= order_bound(rho)
                assert 0 <= ktilde <= seq.kbar

    def test_never_exceeds_bound(self):
        """Both order values stay within 2*kbar + 3 over 10^5 random targets."""
        from euler_factor.canonical import tilde_reflection
        from euler_factor.minimality import build_sequence, order_bound, order_value
        from euler_factor.so3 import random_rotation

        rhos = (0.25, 1.0, 2.0, 5.0)
        seqs = [build_sequence(rho) for rho in rhos]
        bounds = [order_bound(rho) for rho in rhos]
        reflections = [tilde_reflection(rho) for rho in rhos]
        rng = np.random.default_rng(11)
        for i in range(100_000):
            j = i % len(rhos)
            X = random_rotation(rng)
            T = reflections[j]
            assert order_value(X, seqs[j])[0] <= bounds[j]
            assert order_value(T @ X @ T.T, seqs[j])[0] <= bounds[j]


class TestMinFactors:
    """Tests for min_factors."""

    def test_identity(self):
        from euler_factor.minimality import min_factors

        assert min_factors(np.eye(3), 2.0).count == 0

    def test_z2_rotation_is_one_factor_ending_z2(self):
        from euler_factor.canonical import Axis, canonical_generators
        from euler_factor.minimality import min_factors

        _, Z2 = canonical_generators(2.0)
        decision = min_factors(Z2.exp(0.3), 2.0)
        assert decision.count == 1
        assert decision.last_axis is Axis.Z2

    def test_ties_prefer_z1(self, acceptance_targets):
        from euler_factor.canonical import Axis, tilde_reflection
        from euler_factor.minimality import build_sequence, min_factors, order_value

        rho = 0.25
        seq = build_sequence(rho)
        T = tilde_reflection(rho)
        ties = [
            X for X in acceptance_targets[:200]
            if order_value(X, seq)[0] == order_value(T @ X @ T.T, seq)[0]
        ]
        assert len(ties) > 10
        for X in ties:
            assert min_factors(X, rho).last_axis is Axis.Z1

    def test_orthogonal_generators_at_most_three(self):
        from euler_factor.minimality import sampled_order

        assert sampled_order(0.0, samples=10_000, seed=1) == 3

    def test_orthogonal_special_targets(self):
        from euler_factor.canonical import S12, S23
        from euler_factor.minimality import min_factors

        assert min_factors(S12.exp(0.4), 0.0).count == 1
        assert min_factors(S23.exp(0.4), 0.0).count == 1
        assert min_factors(S23.exp(0.4) @ S12.exp(1.1), 0.0).count == 2

    def test_reflection_symmetry(self, random_targets):
        """Exchanging the roles of Z1 and Z2 leaves the count unchanged."""
        from euler_factor.canonical import tilde_reflection
        from euler_factor.minimality import min_factors

        rho = 1.5
        T = tilde_reflection(rho)
        for X in random_targets[:20]:
            assert min_factors(X, rho).count == min_factors(T @ X @ T.T, rho).count

    def test_invalid_target(self):
        from euler_factor.errors import InputError
        from euler_factor.minimality import min_factors

        with pytest.raises(InputError):
            min_factors(np.diag([1.0, -1.0, 1.0]), 1.0)

    def test_order_bound(self):
        from euler_factor.minimality import order_bound

        assert order_bound(0.0) == 3
        assert order_bound(0.5) == 5
        assert order_bound(2.0) == 9

    def test_sampled_order_within_bound(self):
        from euler_factor.minimality import order_bound, sampled_order

        for rho in (0.5, 2.0):
            assert sampled_order(rho, samples=200, seed=3) <= order_bound(rho)

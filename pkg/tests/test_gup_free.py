"""Free-particle closed forms against the spectral-representation oracles."""

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gupqm import gup_free as F
from gupqm import numerics as N
from gupqm.errors import DivergenceError, DomainError, OrderValidityWarning
from gupqm.params import PhysParams, PropagatorQuery


def euclid_closed_complex(p, dq, tau):
    """The Euclidean closed form evaluated at complex time (test helper for
    the analytic-continuation consistency check)."""
    corr = (-3.0 * p.alpha * p.hbar * p.m / tau
            + 6.0 * p.alpha * p.m**2 * dq**2 / tau**2
            - p.alpha * p.m**3 * dq**4 / (p.hbar * tau**3))
    pref = cmath.sqrt(p.m / (2.0 * math.pi * p.hbar * tau))
    return pref * cmath.exp(-p.m * dq * dq / (2.0 * p.hbar * tau)) * (1.0 + corr)


class TestDispersion:
    def test_at_zero(self):
        assert F.dispersion(PhysParams(alpha=0.01), 0.0) == 0.0

    def test_quadratic_part(self):
        assert F.dispersion(PhysParams(alpha=0.0), 1.0) == 0.5

    def test_quartic_correction(self):
        assert F.dispersion(PhysParams(alpha=0.01), 1.0) == pytest.approx(0.51)

    @given(st.floats(-30.0, 30.0))
    @settings(max_examples=40, deadline=None)
    def test_even_in_k(self, k):
        p = PhysParams(alpha=1e-3)
        assert F.dispersion(p, k) == F.dispersion(p, -k)


class TestFreeEuclidean:
    def test_textbook_coincident_point(self):
        p = PhysParams(alpha=0.0)
        got = F.free_euclidean(p, PropagatorQuery.euclidean(0.0, 0.0, 1.0))
        assert got == pytest.approx(1.0 / math.sqrt(2.0 * math.pi), rel=1e-15)

    @given(st.floats(-2.0, 2.0), st.floats(0.3, 3.0))
    @settings(max_examples=40, deadline=None)
    def test_even_in_separation(self, dq, tau):
        p = PhysParams(alpha=1e-3)
        a = F.free_euclidean(p, PropagatorQuery.euclidean(dq, 0.0, tau))
        b = F.free_euclidean(p, PropagatorQuery.euclidean(-dq, 0.0, tau))
        assert a == b

    def test_matches_truncated_oracle(self):
        p = PhysParams(alpha=1e-3)
        q = PropagatorQuery.euclidean(1.0, 0.0, 1.0)
        closed = F.free_euclidean(p, q)
        oracle = F.euclidean_oracle(p, q, F.TRUNCATED)
        assert closed == pytest.approx(oracle, rel=1e-10)

    def test_full_exponent_gap_scales_quadratically(self):
        q = PropagatorQuery.euclidean(1.0, 0.0, 1.0)

        def gap(alpha):
            p = PhysParams(alpha=alpha)
            return abs(F.free_euclidean(p, q) - F.euclidean_oracle(p, q, F.FULL))

        ratio = gap(1e-3) / gap(5e-4)
        assert ratio == pytest.approx(4.0, abs=0.5)

    def test_alpha_zero_oracle_agreement(self):
        p = PhysParams(alpha=0.0)
        q = PropagatorQuery.euclidean(0.7, -0.2, 0.8)
        assert F.free_euclidean(p, q) == pytest.approx(
            F.euclidean_oracle(p, q, F.FULL), rel=1e-10)

    def test_requires_tau(self):
        p = PhysParams()
        with pytest.raises(DomainError):
            F.free_euclidean(p, PropagatorQuery.energy(0.0, 0.0, 1.0))

    def test_order_flag_fires_non_fatally(self):
        p = PhysParams(alpha=0.05)
        with pytest.warns(OrderValidityWarning):
            val = F.free_euclidean(p, PropagatorQuery.euclidean(3.0, 0.0, 0.3))
        assert math.isfinite(val)


class TestFreeKernel:
    def test_textbook_coincident_point(self):
        p = PhysParams(alpha=0.0)
        got = F.free_kernel(p, PropagatorQuery.realtime(0.0, 0.0, 1.0))
        expected = 1.0 / cmath.sqrt(2j * math.pi)
        assert abs(got - expected) < 1e-15

    def test_principal_branch_phase(self):
        p = PhysParams(alpha=0.0)
        got = F.free_kernel(p, PropagatorQuery.realtime(0.0, 0.0, 1.0))
        pinned = cmath.exp(-1j * math.pi / 4.0) / math.sqrt(2.0 * math.pi)
        assert abs(got - pinned) < 1e-15

    def test_continuation_consistency_with_euclidean(self):
        # substituting tau -> iT in the Euclidean closed form reproduces the
        # real-time kernel on the nose
        p = PhysParams(alpha=2e-3)
        for T in (0.5, 1.0, 2.0):
            for dq in (0.0, 0.7, 1.5):
                k = F.free_kernel(p, PropagatorQuery.realtime(dq, 0.0, T))
                cont = euclid_closed_complex(p, dq, 1j * T)
                assert abs(k - cont) <= 1e-14 * abs(k)

    def test_matches_full_dispersion_oracle_to_completion_order(self):
        # the oracle integrates the exact quartic dispersion; the measured
        # gap is the O(alpha^2) completion difference, ~2e2 alpha^2 here
        p = PhysParams(alpha=1e-3)
        q = PropagatorQuery.realtime(1.0, 0.0, 1.0)
        closed = F.free_kernel(p, q)
        oracle = F.kernel_oracle(p, q)
        rel = abs(closed - oracle) / abs(oracle)
        assert 0.5e-4 < rel < 4e-4

    def test_kernel_oracle_exact_at_alpha_zero(self):
        p = PhysParams(alpha=0.0)
        q = PropagatorQuery.realtime(1.0, 0.0, 1.0)
        closed = F.free_kernel(p, q)
        oracle = F.kernel_oracle(p, q)
        assert abs(closed - oracle) / abs(closed) < 1e-6

    def test_rejects_zero_time(self):
        with pytest.raises(DomainError):
            PropagatorQuery.realtime(0.0, 0.0, 0.0)


class TestFreeGreen:
    def test_alpha_zero_coincident(self):
        p = PhysParams(alpha=0.0)
        got = F.free_green(p, PropagatorQuery.energy(0.0, 0.0, 0.5))
        assert got == pytest.approx(1.0, rel=1e-15)

    def test_monotone_decay_in_separation(self):
        p = PhysParams(alpha=1e-3)
        vals = [F.free_green(p, PropagatorQuery.energy(dq, 0.0, 1.0))
                for dq in (0.0, 0.5, 1.0, 2.0, 4.0, 8.0)]
        assert all(a > b > 0.0 for a, b in zip(vals, vals[1:]))

    def test_is_laplace_transform_of_euclidean(self):
        for alpha in (0.0, 1e-3):
            p = PhysParams(alpha=alpha)
            for dq in (0.5, 1.0, 2.0):
                for eps in (0.5, 1.0, 2.0):
                    fwd = N.laplace_forward(
                        lambda t: F.free_euclidean(
                            p, PropagatorQuery.euclidean(dq, 0.0, t)), eps)
                    direct = F.free_green(p, PropagatorQuery.energy(dq, 0.0, eps))
                    assert fwd == pytest.approx(direct, rel=1e-8)

    def test_coincident_point_transform_refused_at_positive_alpha(self):
        # the first-order term behaves like tau^{-3/2} at the origin there
        p = PhysParams(alpha=1e-3)
        with pytest.raises(DivergenceError):
            N.laplace_forward(
                lambda t: F.free_euclidean(p, PropagatorQuery.euclidean(0.0, 0.0, t)),
                1.0)

    def test_coincident_point_transform_fine_at_alpha_zero(self):
        p = PhysParams(alpha=0.0)
        fwd = N.laplace_forward(
            lambda t: F.free_euclidean(p, PropagatorQuery.euclidean(0.0, 0.0, t)), 1.0)
        assert fwd == pytest.approx(
            F.free_green(p, PropagatorQuery.energy(0.0, 0.0, 1.0)), rel=1e-9)


class TestOracleIdentities:
    def test_semigroup_composition(self):
        p = PhysParams(alpha=1e-3)
        assert F.semigroup_residual(p, 0.4, -0.2, 0.5, 0.5) <= 1e-6
        assert F.semigroup_residual(p, 0.4, -0.2, 0.3, 0.7) <= 1e-6

    def test_normalization(self):
        for alpha in (0.0, 1e-3):
            assert F.normalization_residual(PhysParams(alpha=alpha), 0.3, 1.0) <= 1e-8

    def test_oracle_mode_validation(self):
        p = PhysParams()
        with pytest.raises(DomainError):
            F.euclidean_oracle(p, PropagatorQuery.euclidean(0.0, 0.0, 1.0), "bogus")


class TestPropagatorQuery:
    def test_exactly_one_time(self):
        with pytest.raises(DomainError):
            PropagatorQuery(0.0, 0.0, tau=1.0, eps=1.0)
        with pytest.raises(DomainError):
            PropagatorQuery(0.0, 0.0)

    def test_positivity(self):
        with pytest.raises(DomainError):
            PropagatorQuery.euclidean(0.0, 0.0, -1.0)
        with pytest.raises(DomainError):
            PropagatorQuery.energy(0.0, 0.0, 0.0)

    def test_params_validation(self):
        with pytest.raises(DomainError):
            PhysParams(hbar=0.0)
        with pytest.raises(DomainError):
            PhysParams(alpha=-1e-3)

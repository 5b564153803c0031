import math

import numpy as np
import pytest
import scipy.integrate as si
import scipy.optimize as so
from hypothesis import given, settings
from hypothesis import strategies as st

from bgkspectral import (
    DomainError,
    kernel_q,
    kernel_q_c,
    make_params,
    mu_of,
    velocity_map,
    weight,
    weight_c,
)
from bgkspectral.quadrature import integrate_weighted

from conftest import A_GRID, adaptive_weighted

SQPI = math.sqrt(math.pi)


class TestMakeParams:
    def test_a_zero_values(self):
        p = make_params(0.0)
        assert p.beta == pytest.approx(0.5, abs=1e-15)
        assert p.r0 == pytest.approx(1.0 / SQPI, abs=1e-15)
        assert p.alpha == math.inf

    def test_beta_large_a_limit(self):
        assert abs(make_params(1e6).beta - 1.0) < 1e-5

    def test_beta_a1_against_quadrature_solve(self):
        # independent oracle: solve int e^{-C^2}(1+|C|)(C^2-beta) dC = 0
        def orth(beta):
            val, _ = si.quad(
                lambda c: math.exp(-c * c) * (1 + abs(c)) * (c * c - beta),
                -10, 10, points=[0.0], limit=200)
            return val

        beta_star = so.brentq(orth, 0.4, 0.9, xtol=1e-13)
        p = make_params(1.0)
        assert p.beta == pytest.approx(beta_star, abs=1e-10)
        assert p.beta == pytest.approx(0.68035, abs=5e-5)

    @pytest.mark.parametrize("a", A_GRID)
    def test_defining_identities(self, a):
        p = make_params(a)
        assert 0.5 <= p.beta < 1.0
        assert p.r0 * (a + SQPI) == pytest.approx(1.0, rel=1e-15)
        assert p.r1 * (2 * a + SQPI) == pytest.approx(2.0, rel=1e-15)
        assert p.r2 * (4 * a * a + 7 * SQPI * a + 2 * math.pi) == pytest.approx(
            4 * (a + SQPI), rel=1e-15)

    @pytest.mark.parametrize("bad", [-1.0, -1e-12, math.nan, math.inf])
    def test_rejects_bad_slope(self, bad):
        with pytest.raises(DomainError):
            make_params(bad)

    def test_orthogonality_integral_vanishes(self, model):
        for a, (p, s) in model.items():
            val = integrate_weighted(s, lambda c: c * c - p.beta)
            assert abs(val) < 1e-12


class TestVelocityMap:
    def test_fixed_point_and_identity(self):
        p = make_params(1.0)
        assert velocity_map(p, 0.0) == 0.0
        p0 = make_params(0.0)
        for mu in (-3.0, 0.2, 7.5):
            assert velocity_map(p0, mu) == mu

    def test_simple_value(self):
        p = make_params(1.0)
        assert mu_of(p, 1.0) == pytest.approx(0.5, abs=1e-15)

    def test_domain_error(self):
        p = make_params(2.0)
        with pytest.raises(DomainError):
            velocity_map(p, 0.5)  # alpha = 1/2

    @settings(max_examples=60, deadline=None)
    @given(
        a=st.floats(min_value=0.0, max_value=5.0),
        c=st.floats(min_value=-30.0, max_value=30.0),
    )
    def test_round_trip_and_oddness(self, a, c):
        p = make_params(a)
        mu = mu_of(p, c)
        assert abs(mu) < p.alpha or p.alpha == math.inf
        # mu -> C -> mu is the well-conditioned round trip
        assert mu_of(p, velocity_map(p, mu)) == pytest.approx(
            mu, abs=1e-14 * (1 + abs(mu)))
        assert velocity_map(p, -mu) == pytest.approx(
            -velocity_map(p, mu), abs=1e-13 * (1 + abs(c)))

    def test_round_trip_bulk(self):
        # mu -> C -> mu over 1e4 random points, exact to 1e-14
        rng = np.random.default_rng(7)
        p = make_params(1.4)
        mu = rng.uniform(-1, 1, 10_000) * p.alpha * (1 - 1e-9)
        back = mu_of(p, velocity_map(p, mu))
        assert np.max(np.abs(back - mu)) < 1e-14

    def test_map_monotone_and_divergent(self):
        p = make_params(0.5)
        mus = np.linspace(-p.alpha * (1 - 1e-9), p.alpha * (1 - 1e-9), 1001)
        cs = velocity_map(p, mus)
        assert np.all(np.diff(cs) > 0)
        assert cs[-1] > 1e6 and cs[0] < -1e6


class TestWeight:
    def test_at_zero(self):
        assert weight(make_params(1.3), 0.0) == 1.0

    def test_endpoint_is_limit_not_error(self):
        p = make_params(2.0)
        assert weight(p, p.alpha) == 0.0
        assert weight(p, -p.alpha) == 0.0

    @pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
    def test_endpoint_decay_with_powers(self, a):
        # rho(mu) C(mu)^n -> 0 at the interval ends for n = 0..8
        p = make_params(a)
        for eps in (1e-2, 1e-4, 1e-6):
            mu = p.alpha * (1 - eps)
            c = velocity_map(p, mu)
            vals = weight(p, mu) * c ** np.arange(9)
            assert np.max(np.abs(vals)) < 1e-30

    def test_total_mass(self, model):
        # int rho dmu = sqrt(pi) + a via the C-variable identity
        for a, (p, s) in model.items():
            total = integrate_weighted(s, lambda c: np.ones_like(c))
            assert total == pytest.approx(SQPI + a, rel=1e-13)
            oracle = adaptive_weighted(p, lambda c: 1.0)
            assert total == pytest.approx(oracle, rel=1e-11)

    def test_weight_c_consistency(self):
        # w(C) dC equals rho(mu) dmu through the jacobian of mu(C)
        p = make_params(0.7)
        c = np.linspace(-3, 3, 13)
        mu = mu_of(p, c)
        jac = (1.0 + p.a * np.abs(c)) ** -2
        assert np.allclose(weight_c(p, c), weight(p, mu) * jac, rtol=1e-13)


class TestKernel:
    @settings(max_examples=40, deadline=None)
    @given(
        a=st.floats(min_value=0.0, max_value=4.0),
        c1=st.floats(min_value=-3.0, max_value=3.0),
        c2=st.floats(min_value=-3.0, max_value=3.0),
    )
    def test_symmetry(self, a, c1, c2):
        p = make_params(a)
        assert kernel_q_c(p, c1, c2) == pytest.approx(
            kernel_q_c(p, c2, c1), rel=1e-14, abs=1e-14)

    def test_a0_corollary_form(self):
        # q(C, C', 0) = 1 + 2CC' + 2(C^2 - 1/2)(C'^2 - 1/2), scaled by sqrt(pi)
        p = make_params(0.0)
        rng = np.random.default_rng(11)
        for _ in range(20):
            c1, c2 = rng.uniform(-2, 2, 2)
            expect = (1 + 2 * c1 * c2
                      + 2 * (c1 * c1 - 0.5) * (c2 * c2 - 0.5)) / SQPI
            assert kernel_q_c(p, c1, c2) == pytest.approx(expect, rel=1e-13)

    def test_row_integral_is_one(self, model):
        # int rho(mu') q(mu, mu') dmu' = 1 for any mu (h0 is a solution)
        for a, (p, s) in model.items():
            for mu in (0.0, 0.3 / (1 + a), -0.8 / (1 + a)):
                c_fixed = velocity_map(p, mu)
                val = integrate_weighted(
                    s, lambda cp: kernel_q_c(p, c_fixed, cp))
                assert val == pytest.approx(1.0, abs=1e-12)

    def test_domain_validation(self):
        p = make_params(2.0)
        with pytest.raises(DomainError):
            kernel_q(p, 0.1, 0.7)


class TestConservationClosure:
    @pytest.mark.parametrize("a", A_GRID)
    def test_conservation_suite(self, a, model):
        p, s = model[a]
        m0 = integrate_weighted(s, lambda c: np.ones_like(c))
        m1 = integrate_weighted(s, lambda c: c)
        orth = integrate_weighted(s, lambda c: c * c - p.beta)
        assert abs(m0 - (SQPI + a)) / (SQPI + a) < 1e-10
        assert abs(m1) / m0 < 1e-10
        assert abs(orth) / m0 < 1e-10

    @pytest.mark.parametrize("a", A_GRID)
    def test_closure_identities(self, a, model):
        p, s = model[a]
        m0 = integrate_weighted(s, lambda c: np.ones_like(c))
        m2 = integrate_weighted(s, lambda c: c * c)
        e2 = integrate_weighted(s, lambda c: (c * c - p.beta) ** 2)
        assert p.r0 * m0 == pytest.approx(1.0, rel=1e-10)
        assert p.r1 * m2 == pytest.approx(1.0, rel=1e-10)
        assert p.r2 * e2 == pytest.approx(1.0, rel=1e-10)

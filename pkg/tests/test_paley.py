import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import beta as beta_fn
from shapely.geometry import MultiPoint, Point

from conftest import rand_series
from hardylab.errors import ZeroFunction
from hardylab.paley import (AreaQuad, RadialQuad, StolzAngle, angle_table, arc_halfwidth,
                            disc_area_integral, fs_ratio, g_function, gk_function, gk_lp_norm,
                            gk_profile, lemma1_check, lemma1_constant, lusin_area,
                            lusin_area_profile, stolz_contains)
from hardylab.series import PowerSeries, ps_rotate


def stolz_polygon(theta, sigma, n=20000):
    t = 2 * np.pi * np.arange(n) / n
    pts = [(sigma * math.cos(a), sigma * math.sin(a)) for a in t]
    pts.append((math.cos(theta), math.sin(theta)))
    return MultiPoint(pts).convex_hull


def polar_moment(poly):
    """Exact ``int (x^2 + y^2) dx dy`` over a polygon by Green's theorem."""
    x, y = np.asarray(poly.exterior.coords).T
    x0, y0, x1, y1 = x[:-1], y[:-1], x[1:], y[1:]
    cross = x0 * y1 - x1 * y0
    ixx = np.sum(cross * (y0**2 + y0 * y1 + y1**2)) / 12
    iyy = np.sum(cross * (x0**2 + x0 * x1 + x1**2)) / 12
    return abs(ixx + iyy)


def falling(m, k):
    return math.factorial(m) / math.factorial(m - k)


class TestQuadrature:
    def test_moments(self):
        q = RadialQuad.for_degree(20)
        for m in range(0, 40):
            assert q.moment_error(m) < 1e-13

    def test_validation(self):
        with pytest.raises(ValueError):
            RadialQuad(np.array([0.5, 0.2]), np.array([1.0, 1.0]))
        with pytest.raises(ValueError):
            StolzAngle(0.0, 1.0)

    def test_angular_resolution(self):
        assert AreaQuad(n_angular=64).angular_for(100) >= 202

    def test_disc_integral(self):
        q = AreaQuad(16, 32)
        assert disc_area_integral(lambda w: np.ones(w.shape), 0.3 + 0.1j, 0.2, q) == pytest.approx(0.04)
        got = disc_area_integral(lambda w: np.abs(w) ** 2, 0, 0.5, q)
        assert got == pytest.approx(0.5**4 / 2, rel=1e-13)


class TestSquareFunctions:
    @pytest.mark.parametrize("m,k", [(1, 1), (3, 1), (3, 2), (5, 3), (8, 2)])
    def test_monomial_closed_form(self, m, k):
        q = RadialQuad.for_degree(m)
        want = falling(m, k) * math.sqrt(beta_fn(2 * (m - k) + 1, 2 * k))
        got = gk_function(PowerSeries.monomial(m), k, np.linspace(0, 6, 7), q)
        assert np.allclose(got, want, rtol=1e-12)
        prof = gk_profile(PowerSeries.monomial(m), k, 16, q)
        assert np.allclose(prof, want, rtol=1e-12)

    def test_g_is_first_order(self, rng):
        f = rand_series(rng, 10)
        q = RadialQuad.for_degree(10)
        assert g_function(f, 0.7, q) == gk_function(f, 1, 0.7, q)

    def test_profile_matches_pointwise(self, rng):
        f = rand_series(rng, 12)
        q = RadialQuad.for_degree(12)
        theta = 2 * np.pi * np.arange(32) / 32
        assert np.allclose(gk_profile(f, 2, 32, q), gk_function(f, 2, theta, q), rtol=1e-12)

    def test_l2_norm_is_weighted_coefficient_sum(self, rng):
        # mean of G_k^2 is sum |c_m|^2 (m!/(m-k)!)^2 B(2m-2k+1, 2k)
        f = rand_series(rng, 9)
        k = 2
        q = RadialQuad.for_degree(9)
        want = sum(abs(c) ** 2 * falling(m, k) ** 2 * beta_fn(2 * (m - k) + 1, 2 * k)
                   for m, c in enumerate(f.coeffs) if m >= k)
        assert gk_lp_norm(f, k, 2, 64, q) ** 2 == pytest.approx(want, rel=1e-12)

    def test_bad_order(self):
        q = RadialQuad.gauss(4)
        with pytest.raises(ValueError):
            gk_function(PowerSeries([1]), 0, 0.0, q)
        with pytest.raises(ValueError):
            gk_lp_norm(PowerSeries([1]), 1, 0, 8, q)

    @given(st.integers(0, 15))
    @settings(max_examples=10)
    def test_rotation_covariance(self, shift):
        rng = np.random.default_rng(shift)
        f = rand_series(rng, 10)
        M = 16
        q = RadialQuad.for_degree(10)
        base = gk_profile(f, 1, M, q)
        rot = gk_profile(ps_rotate(f, 2 * np.pi * shift / M), 1, M, q)
        assert np.allclose(rot, np.roll(base, -shift), rtol=1e-11)


class TestStolz:
    @pytest.mark.parametrize("theta,sigma", [(0.0, 0.5), (1.3, 0.3), (4.0, 0.8)])
    def test_membership_against_hull(self, theta, sigma):
        poly = stolz_polygon(theta, sigma)
        rng = np.random.default_rng(7)
        z = rng.uniform(-1, 1, 3000) + 1j * rng.uniform(-1, 1, 3000)
        z = z[np.abs(z) < 1]
        mine = stolz_contains(StolzAngle(theta, sigma), z)
        for w, got in zip(z, mine):
            p = Point(w.real, w.imag)
            if poly.exterior.distance(p) > 1e-6:
                assert got == poly.contains(p)

    def test_scalar_membership(self):
        G = StolzAngle(0.0)
        assert stolz_contains(G, 0.0) is True
        assert stolz_contains(G, 0.99) is True
        assert stolz_contains(G, 0.9j) is False

    def test_arc_halfwidth(self):
        sigma = 0.5
        assert arc_halfwidth(sigma, 0.3) == pytest.approx(math.pi)
        G = StolzAngle(0.0, sigma)
        for r in (0.55, 0.7, 0.9, 0.99):
            phi = float(arc_halfwidth(sigma, r))
            assert 0 < phi < math.pi
            assert stolz_contains(G, r * np.exp(1j * (phi - 1e-7)))
            assert not stolz_contains(G, r * np.exp(1j * (phi + 1e-7)))

    @pytest.mark.parametrize("theta,sigma", [(0.0, 0.5), (2.0, 0.3), (5.5, 0.7)])
    def test_area_of_linear_function(self, theta, sigma):
        # f' = 1: S^2 is the normalized area of the region
        poly = stolz_polygon(theta, sigma)
        got = lusin_area(PowerSeries([0, 1]), StolzAngle(theta, sigma), AreaQuad(64, 64))
        assert got**2 == pytest.approx(poly.area / math.pi, rel=1e-6)

    @pytest.mark.parametrize("theta", [0.0, 0.9, 3.5])
    def test_area_of_quadratic(self, theta):
        poly = stolz_polygon(theta, 0.5)
        got = lusin_area(PowerSeries([0, 0, 1]), StolzAngle(theta, 0.5), AreaQuad(64, 64))
        assert got**2 == pytest.approx(4 * polar_moment(poly) / math.pi, rel=1e-6)

    def test_profile_matches_pointwise(self, rng):
        f = rand_series(rng, 8)
        q = AreaQuad(48, 64)
        prof = lusin_area_profile(f, 0.5, 8, q)
        for j in range(8):
            assert prof[j] == pytest.approx(lusin_area(f, StolzAngle(2 * np.pi * j / 8), q), rel=1e-12)

    def test_area_bounded_by_dirichlet(self, rng):
        f = rand_series(rng, 10)
        dirichlet = math.sqrt(sum(k * abs(c) ** 2 for k, c in enumerate(f.coeffs)))
        assert np.all(lusin_area_profile(f, 0.6, 32, AreaQuad()) <= dirichlet * (1 + 1e-12))

    def test_fs_ratio(self, rng):
        with pytest.raises(ZeroFunction):
            fs_ratio(PowerSeries.zero(3), 2)
        r = fs_ratio(rand_series(rng, 12), 2)
        assert 0.05 < r < 5

    def test_angle_table(self, rng):
        rows = angle_table(rand_series(rng, 6), 2, 8, RadialQuad.for_degree(6))
        assert len(rows) == 8 and set(rows[0]) == {"theta", "G", "G2", "S"}


class TestDerivativeEstimate:
    def test_constant(self):
        assert lemma1_constant(1) == 4 and lemma1_constant(2) == 2 * 1 * 16

    def test_validation(self):
        with pytest.raises(ValueError):
            lemma1_check(PowerSeries([0, 1]), 0.1, 0)
        with pytest.raises(ValueError):
            lemma1_check(PowerSeries([0, 1]), 1.0, 1)

    def test_linear_case_exact(self):
        # f = z: |f'|^2 = 1, area of D(z, rho) is rho^2, so rhs = 4 * (1/4) = 1 = lhs
        lhs, rhs = lemma1_check(PowerSeries([0, 1]), 0.4 + 0.2j, 1)
        assert lhs == pytest.approx(1.0)
        assert rhs == pytest.approx(1.0, rel=1e-13)

    @given(st.integers(0, 10_000), st.floats(0, 0.95), st.floats(0, 2 * math.pi), st.integers(1, 4))
    @settings(max_examples=30)
    def test_inequality(self, seed, r, t, n):
        f = rand_series(np.random.default_rng(seed), 10)
        lhs, rhs = lemma1_check(f, r * np.exp(1j * t), n)
        assert lhs <= rhs * (1 + 1e-10) + 1e-300

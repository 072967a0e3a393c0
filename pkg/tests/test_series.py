import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rand_series, series
from hardylab.errors import ZeroConstantTerm
from hardylab.sepalg import pochhammer
from hardylab.series import (PowerSeries, linear_combination, ps_diff, ps_dilate, ps_div,
                             ps_eval_k, ps_int, ps_log, ps_mul, ps_pow, ps_rotate, remove_jets)


def brute_product(a, b, N):
    out = np.zeros(N + 1, dtype=complex)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= N:
                out[i + j] += x * y
    return out


class TestPowerSeries:
    def test_coefficients_are_read_only(self):
        f = PowerSeries([1, 2, 3])
        with pytest.raises(ValueError):
            f.coeffs[0] = 5

    def test_empty_input_is_zero(self):
        assert PowerSeries([]).degree == 0
        assert PowerSeries([]).coeffs[0] == 0

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            PowerSeries([1, np.nan])

    def test_equality_pads_with_zeros(self):
        assert PowerSeries([1, 2]) == PowerSeries([1, 2, 0, 0])
        assert PowerSeries([1, 2]) != PowerSeries([1, 3])

    def test_dict_round_trip(self):
        f = PowerSeries([1 + 2j, -0.5, 3j])
        assert PowerSeries.from_dict(f.to_dict()) == f

    def test_arithmetic(self):
        f, g = PowerSeries([1, 1]), PowerSeries([0, 0, 2])
        assert (f + g) == PowerSeries([1, 1, 2])
        assert (f - f) == PowerSeries.zero(1)
        assert (f * f) == PowerSeries([1, 2, 1])
        assert (2 * f) == PowerSeries([2, 2])

    def test_call_evaluates(self):
        assert PowerSeries([1, 1])(1j) == 1 + 1j


class TestMul:
    def test_binomial(self):
        f = PowerSeries([1, 1])
        assert ps_mul(f, f, 2) == PowerSeries([1, 2, 1])

    def test_unit(self):
        f = PowerSeries([3, -1j, 2])
        assert ps_mul(f, PowerSeries.const(1), 2) == f

    def test_against_double_loop(self, rng):
        for _ in range(10):
            f, g = rand_series(rng, 16), rand_series(rng, 16)
            got = ps_mul(f, g, 32).coeffs
            ref = brute_product(f.coeffs, g.coeffs, 32)
            assert np.max(np.abs(got - ref)) <= 1e-14 * np.max(np.abs(ref))

    def test_fft_path_matches_direct(self, rng):
        f, g = rand_series(rng, 3000), rand_series(rng, 3000)
        got = ps_mul(f, g, 3000).coeffs
        ref = np.convolve(f.coeffs, g.coeffs)[:3001]
        assert np.max(np.abs(got - ref)) <= 1e-10 * np.max(np.abs(ref))

    def test_truncates_output(self):
        assert ps_mul(PowerSeries([1, 1]), PowerSeries([1, 1]), 1) == PowerSeries([1, 2])

    @given(series(), series(), series())
    def test_commutative_and_associative(self, f, g, h):
        N = 10
        fg = brute_product(np.abs(f.coeffs), np.abs(g.coeffs), N)
        assert np.allclose(ps_mul(f, g, N).coeffs, ps_mul(g, f, N).coeffs, rtol=0,
                           atol=1e-14 * (1 + np.max(fg)))
        left = ps_mul(ps_mul(f, g, N), h, N).coeffs
        right = ps_mul(f, ps_mul(g, h, N), N).coeffs
        scale = 1 + np.max(np.abs(brute_product(np.abs(f.coeffs), np.abs(g.coeffs), 2 * N)))
        scale *= 1 + np.max(np.abs(h.coeffs))
        assert np.max(np.abs(left - right)) <= 1e-13 * scale


class TestCalculus:
    def test_examples(self):
        assert ps_diff(PowerSeries.monomial(2)) == PowerSeries([0, 2])
        for k in range(6):
            assert ps_diff(PowerSeries.monomial(k), k) == PowerSeries.const(math.factorial(k))
        assert ps_int(PowerSeries.const(1)) == PowerSeries([0, 1])
        assert ps_int(PowerSeries.const(2), 2) == PowerSeries([0, 0, 1])

    def test_monomial_integral(self):
        for k in range(5):
            for n in range(5):
                got = ps_int(PowerSeries.monomial(k), n)
                want = math.factorial(k) / math.factorial(k + n)
                assert got.degree == k + n
                assert got.coeffs[k + n] == pytest.approx(want, rel=1e-15)

    def test_derivative_beyond_degree(self):
        assert ps_diff(PowerSeries([1, 2]), 5) == PowerSeries.zero()

    @given(series(), st.integers(0, 8))
    def test_diff_undoes_int(self, f, n):
        back = ps_diff(ps_int(f, n), n).coeffs
        assert np.allclose(back, f.coeffs, rtol=4e-16 * 10, atol=0)

    @given(series())
    def test_int_undoes_diff_up_to_constant(self, f):
        back = ps_int(ps_diff(f, 1), 1).padded(f.degree)
        want = f.coeffs.copy()
        want[0] = 0
        assert np.allclose(back, want, rtol=1e-15, atol=0)

    @given(series(), series(), finite_c := st.complex_numbers(max_magnitude=5))
    def test_linear(self, f, g, c):
        lhs = ps_diff(f + c * g, 2)
        rhs = ps_diff(f, 2) + c * ps_diff(g, 2)
        assert np.allclose(lhs.padded(12), rhs.padded(12), atol=1e-12)
        lhs = ps_int(f + c * g, 2)
        rhs = ps_int(f, 2) + c * ps_int(g, 2)
        assert np.allclose(lhs.padded(14), rhs.padded(14), atol=1e-12)


class TestEval:
    def test_examples(self):
        assert ps_eval_k(PowerSeries([1, 1]), 0, 1j) == 1 + 1j
        assert np.allclose(ps_eval_k(PowerSeries.monomial(2), 2, np.array([0.3, 5j])), 2)

    def test_geometric(self):
        f = PowerSeries(0.5 ** np.arange(201))
        assert abs(ps_eval_k(f, 0, 0.3) - 1 / (1 - 0.15)) < 1e-12

    def test_against_numpy_polyval(self, rng):
        f = rand_series(rng, 20)
        z = rng.standard_normal(7) * 0.5 + 0.3j
        for k in range(4):
            d = np.polynomial.polynomial.polyder(f.coeffs, k)
            assert np.allclose(ps_eval_k(f, k, z), np.polynomial.polynomial.polyval(z, d))


class TestPowLogDiv:
    def test_examples(self):
        assert ps_pow(PowerSeries.const(4), 0.5) == PowerSeries.const(2)
        with pytest.raises(ZeroConstantTerm):
            ps_pow(PowerSeries([0, 1]), 0.5)

    def test_negative_power_is_pochhammer(self):
        for gamma in (0.5, 2.0, 3.5):
            h = ps_pow(PowerSeries([1, -1]), -gamma, 20)
            ref = [pochhammer(gamma, k) / math.factorial(k) for k in range(21)]
            assert np.allclose(h.coeffs, ref, rtol=1e-13)

    def test_inverse_power(self, rng):
        c = rand_series(rng, 64, 0.1).coeffs.copy()
        c[0] = 1
        f = PowerSeries(c)
        back = ps_pow(ps_pow(f, 0.37), 1 / 0.37)
        assert np.max(np.abs(back.coeffs - f.coeffs)) <= 1e-10

    def test_integer_power_is_repeated_product(self, rng):
        c = rand_series(rng, 64, 0.2).coeffs.copy()
        c[0] = 1.5
        f = PowerSeries(c)
        for m in (1, 2, 3, 5):
            rep = PowerSeries.const(1, 64)
            for _ in range(m):
                rep = ps_mul(rep, f, 64)
            got = ps_pow(f, m)
            assert np.max(np.abs(got.coeffs - rep.coeffs)) <= 1e-10 * rep.max_abs()

    def test_division_examples(self):
        f = PowerSeries([2, 1, 3])
        assert np.allclose(ps_div(f, f).coeffs, [1, 0, 0])
        assert np.allclose(ps_div(PowerSeries([1, 0, -1]), PowerSeries([1, -1, 0])).coeffs, [1, 1, 0])
        with pytest.raises(ZeroConstantTerm):
            ps_div(f, PowerSeries([0, 1]))

    def test_division_round_trip(self, rng):
        for _ in range(10):
            f = rand_series(rng, 30)
            gc = rand_series(rng, 30, 0.2).coeffs.copy()
            gc[0] = 1 + abs(gc[0])
            g = PowerSeries(gc)
            back = ps_mul(ps_div(f, g), g, 30)
            assert np.max(np.abs(back.coeffs - f.coeffs)) <= 1e-12 * max(1, f.max_abs())

    def test_log_of_geometric(self):
        # log(1/(1-z)) = sum z^k / k
        f = ps_log(ps_pow(PowerSeries([1, -1]), -1, 30))
        ref = np.r_[0, 1 / np.arange(1, 31)]
        assert np.allclose(f.coeffs, ref, atol=1e-14)

    def test_log_exp_consistency(self, rng):
        c = rand_series(rng, 40, 0.1).coeffs.copy()
        c[0] = 2 - 1j
        f = PowerSeries(c)
        s = 0.7
        via_log = ps_pow(f, s)
        # h = f^s solves h'/h = s f'/f, i.e. log h = s log f
        assert np.allclose(ps_log(via_log).coeffs, s * ps_log(f).coeffs, atol=1e-12)


class TestTransforms:
    def test_dilate_examples(self, rng):
        f = rand_series(rng, 10)
        assert ps_dilate(f, 1.0) == f
        assert ps_dilate(PowerSeries([0, 1]), 0.5) == PowerSeries([0, 0.5])
        z = 0.9 * np.exp(1j * np.linspace(0, 6, 11))
        assert np.allclose(ps_eval_k(ps_dilate(f, 0.6), 0, z), ps_eval_k(f, 0, 0.6 * z), atol=1e-13)

    def test_rotate(self, rng):
        f = rand_series(rng, 10)
        z = 0.5 + 0.2j
        assert abs(ps_eval_k(ps_rotate(f, 0.4), 0, z) - ps_eval_k(f, 0, np.exp(0.4j) * z)) < 1e-13

    def test_remove_jets(self):
        f = remove_jets(PowerSeries([1, 2, 3, 4]), 2)
        assert f == PowerSeries([0, 0, 3, 4])

    def test_linear_combination(self):
        out = linear_combination([(2, PowerSeries([1])), (-1, PowerSeries([0, 0, 1]))])
        assert out == PowerSeries([2, 0, -1])

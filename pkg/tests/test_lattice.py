import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypc.errors import NotOnLattice, ZeroBase
from hypc.lattice import (LambdaList, LambdaPoint, double_power, dpow, lambda_from_ab,
                          neg_one_power, sum_k)

ks = st.integers(-5, 5)
sig = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)
nonzero = st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False)


def polar_oracle(z, k, s):
    r, th = abs(z), cmath.phase(z)
    return cmath.exp(1j * k * th) * cmath.exp(s * math.log(r))


@pytest.mark.parametrize("a, ap, k, s", [(1, 1, 0, 2), (0.5, -0.5, 1, 0)])
def test_from_ab(a, ap, k, s):
    p = lambda_from_ab(a, ap)
    assert (p.k, p.sigma) == (k, s)


def test_from_ab_off_lattice():
    with pytest.raises(NotOnLattice):
        lambda_from_ab(0.3, 0.4)


@given(ks, sig)
def test_ab_round_trip(k, s):
    p = LambdaPoint(k, s)
    assert p.a - p.a_prime == k
    assert abs(p.a + p.a_prime - s) <= 1e-15 * (1 + abs(s))
    q = lambda_from_ab(p.a, p.a_prime)
    assert q.k == k and abs(q.sigma - s) <= 1e-15 * (1 + abs(s))


@pytest.mark.parametrize("z, p, want", [
    (3 - 2j, LambdaPoint(0, 0), 1),
    (4, LambdaPoint(0, 2), 16),
    (1j, LambdaPoint(2, 0), -1),
    (-1, LambdaPoint(1, 0), -1),
    (-1, LambdaPoint(1, 1), -1),
])
def test_double_power_examples(z, p, want):
    assert abs(double_power(z, p) - want) < 1e-14 * abs(want)


def test_negative_real_axis_branch():
    # arg(-1) is +pi even from a negative zero imaginary part; k=1 is odd so only the sign of
    # exp(i k arg) matters at -1, while the half-integer power z^(1/2) separates the two branches
    p = LambdaPoint(0, 1)
    assert abs(double_power(complex(-1, -0.0), p) - 1) < 1e-15
    half = LambdaPoint(1, 0)  # z^(1/2) conj(z)^(-1/2) = exp(i arg z)
    assert abs(double_power(complex(-4, -0.0), half) - double_power(complex(-4, 0.0), half)) < 1e-15


def test_zero_base():
    with pytest.raises(ZeroBase):
        double_power(0, LambdaPoint(1, 1))


@given(nonzero, ks, sig)
def test_matches_polar_formula(z, k, s):
    want = polar_oracle(z, k, s)
    assert abs(double_power(z, LambdaPoint(k, s)) - want) <= 1e-12 * abs(want)


@given(nonzero, ks, sig, ks, sig)
def test_multiplicative(z, k1, s1, k2, s2):
    p, q = LambdaPoint(k1, s1), LambdaPoint(k2, s2)
    lhs = double_power(z, p) * double_power(z, q)
    assert abs(lhs - double_power(z, p + q)) <= 1e-12 * abs(lhs)


@given(nonzero, ks, st.floats(-5, 5))
def test_unit_modulus_on_imaginary_sigma(z, k, t):
    assert abs(abs(double_power(z, LambdaPoint(k, 1j * t))) - 1) < 1e-12


@given(nonzero, ks, sig)
def test_modulus(z, k, s):
    want = abs(z) ** s.real
    assert abs(abs(double_power(z, LambdaPoint(k, s))) - want) <= 1e-12 * want


def test_dpow_vectorised_matches_scalar():
    z = np.array([1 + 1j, -2, 0.5j, -3 - 0.1j])
    got = dpow(z, 3, 0.4 - 0.2j)
    want = [double_power(x, LambdaPoint(3, 0.4 - 0.2j)) for x in z]
    assert np.allclose(got, want, rtol=1e-14)


@pytest.mark.parametrize("k, want", [(0, 1), (1, -1), (-3, -1), (4, 1)])
def test_neg_one_power(k, want):
    assert neg_one_power(LambdaPoint(k, 0.7 + 2j)) == want


def test_complement_and_scaling():
    p = LambdaPoint(3, 0.4 + 1j)
    c = p.complement()
    assert abs(c.a - (1 - p.a)) < 1e-15 and abs(c.a_prime - (1 - p.a_prime)) < 1e-15
    s = p.scaled(3)
    assert abs(s.a - 3 * p.a) < 1e-15 and abs(s.a_prime - 3 * p.a_prime) < 1e-15
    assert p.shifted(2, 1) == LambdaPoint(4, p.sigma + 3)
    assert -p == LambdaPoint(-3, -p.sigma)


def test_list_utilities():
    L = LambdaList.from_text("0:0.5:0;1:0.8:0.1;-2:1:-1")
    h = LambdaPoint(1, 1)
    assert L.plus(h)[1] == L[1] + h
    assert L.minus(h)[2] == L[2] - h
    assert L.without(1) == LambdaList([L[0], L[2]])
    assert L.replace(0, h)[0] == h
    assert sum_k(L) == -1
    assert LambdaList.from_text(L.to_text()) == L
    assert LambdaList.from_text("") == LambdaList()


@pytest.mark.parametrize("text", ["x", "1:2", "a:1:0", "1.5:1:0"])
def test_bad_text(text):
    with pytest.raises(ValueError):
        LambdaPoint.from_text(text)

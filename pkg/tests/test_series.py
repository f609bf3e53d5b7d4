import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypc.errors import BudgetExceeded, DenominatorPole, SeriesDivergent
from hypc.series import hyp_pfq, pfq_array, pochhammer

cplx = lambda m: st.complex_numbers(max_magnitude=m, allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize("a, m, want", [(2.5 - 1j, 0, 1), (1, 5, 120), (0.5, 2, 0.75)])
def test_pochhammer(a, m, want):
    assert abs(pochhammer(a, m) - want) < 1e-14


@pytest.mark.parametrize("num, den, z, want", [
    ([], [], 1, math.e),
    ([1], [], 0.5, 2),
    ([1, 1], [2], 0.5, 2 * math.log(2)),
])
def test_classical_values(num, den, z, want):
    r = hyp_pfq(num, den, z)
    assert abs(r.value - want) < 1e-14
    assert r.abs_error_estimate < 1e-13


def test_on_circle_refused():
    with pytest.raises(SeriesDivergent):
        hyp_pfq([0.5, 0.3], [1.2], 1j)
    with pytest.raises(SeriesDivergent):
        hyp_pfq([0.5, 0.3], [1.2], 0.9995)


def test_too_many_numerator_parameters():
    with pytest.raises(SeriesDivergent):
        hyp_pfq([1, 1, 1], [1], 0.1)


def test_denominator_pole():
    with pytest.raises(DenominatorPole):
        hyp_pfq([1], [-2], 0.1)


def test_budget():
    with pytest.raises(BudgetExceeded):
        hyp_pfq([1], [], 0.998, cap=50)


def test_terminating_series():
    # a nonpositive integer numerator gives a polynomial
    r = hyp_pfq([-3, 0.5], [1.5], 2.0)
    assert abs(r.value - complex(mpmath.hyp2f1(-3, 0.5, 1.5, 2.0))) < 1e-13


@given(st.lists(cplx(3), max_size=3), st.lists(cplx(3), max_size=2), cplx(0.9))
def test_against_mpmath(num, den, z):
    den = [d + 4 for d in den]  # keep denominators away from the poles
    num = num[: len(den) + 1]
    want = complex(mpmath.hyper(num, den, z))
    r = hyp_pfq(num, den, z)
    assert abs(r.value - want) <= 1e-11 * max(1, abs(want)) + r.abs_error_estimate


@given(st.lists(cplx(2), max_size=2), st.lists(cplx(2), min_size=1, max_size=2))
def test_derivative_at_origin(num, den):
    den = [d + 3 for d in den]
    h = 1e-6
    d = (hyp_pfq(num, den, h).value - hyp_pfq(num, den, -h).value) / (2 * h)
    want = np.prod(num) / np.prod(den) if num else 1 / np.prod(den)
    assert abs(d - want) <= 1e-6 * max(1, abs(want))


@given(st.lists(cplx(2), max_size=2), st.lists(cplx(2), min_size=1, max_size=2), cplx(5))
def test_tighter_tolerance(num, den, z):
    den = [d + 3 for d in den]
    num = num[: len(den)]  # entire in z
    a = hyp_pfq(num, den, z, tol_rel=1e-12)
    b = hyp_pfq(num, den, z, tol_rel=1e-13)
    c = hyp_pfq(num, den, z, tol_rel=0.25e-12)
    assert b.terms_used >= a.terms_used
    assert abs(a.value - c.value) <= 1e-10 * max(1, abs(c.value))


def test_vectorised_matches_scalar():
    z = np.array([0.1, -0.5 + 0.3j, 2j, 0.7])
    v, err, _ = pfq_array([0.3 + 1j], [1.7], z)
    for zi, vi in zip(z, v):
        assert abs(vi - hyp_pfq([0.3 + 1j], [1.7], zi).value) < 1e-14 * max(1, abs(vi))
    assert err.shape == z.shape

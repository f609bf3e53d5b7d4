import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypc.errors import OnUnitCircle, ParameterCollision, ResonantParameters
from hypc.gamma import gamma_c_value
from hypc.identities import g01_closed, g11_closed, random_params
from hypc.kernel import GParams
from hypc.lattice import LambdaPoint, dpow
from hypc.residue import g_eval_series, g_series_array, sigma_minus, sigma_plus

P = GParams.from_text
pts = st.builds(LambdaPoint, st.integers(-3, 3),
                st.builds(complex, st.floats(0.05, 0.95), st.floats(-1, 1)))
zs = st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0.05, 5), st.floats(-3.1, 3.1))


def test_g01_example():
    r = g_eval_series(P("0:2:0"), 2)
    assert abs(r.value - 8) < 1e-12
    assert r.diagnostics["branch"] == "sigma_plus"
    assert r.diagnostics["convergence"] == "Divergent"


def test_g11_examples():
    g = P("0:0.5:0", "0:0.5:0")
    r = g_eval_series(g, 3)
    assert abs(r.value - math.sqrt(3) / 2) < 1e-12
    assert r.diagnostics["branch"] == "sigma_minus"
    assert abs(g_eval_series(g, 0.5).value - 2 * math.sqrt(0.5) / 1.5) < 1e-12


def test_unit_circle_value_from_closed_form():
    a = LambdaPoint(0, 0.5)
    assert abs(complex(g11_closed(a, a, 1)) - 1) < 1e-14
    with pytest.raises(OnUnitCircle):
        sigma_plus(P("0:0.5:0", "0:0.5:0"), 1)
    with pytest.raises(OnUnitCircle):
        g_eval_series(P("0:0.5:0", "0:0.5:0"), np.exp(0.3j))


def test_sigma_minus_is_swapped_plus():
    g = P("1:0.3:0.2", "0:0.4:-0.1;-1:0.7:0")
    z = 2.5 - 1j
    assert sigma_minus(g, z).value == sigma_plus(g.swapped(), 1 / z).value


def test_single_summand_for_q1():
    r = sigma_plus(P("1:0.3:0.2", "0:0.4:0"), 0.4j)
    assert r.diagnostics["j_summands"] == 1


def test_resonance():
    with pytest.raises(ResonantParameters):
        g_eval_series(P("0:0.3:0;2:0.3:0", "0:0.5:0"), 0.5)
    with pytest.raises(ResonantParameters):
        sigma_minus(P("0:0.5:0", "0:0.3:0;2:0.3:0"), 2)


def test_collision():
    with pytest.raises(ParameterCollision):
        g_eval_series(P("0:1:0", "0:1:0"), 0.5)


@given(pts, zs)
def test_g01_closed(a, z):
    got = g_eval_series(GParams([a], []), z).value
    want = complex(g01_closed(a, z))
    assert abs(got - want) <= 1e-10 * abs(want)


@given(pts, pts, zs)
def test_g11_closed(a, b, z):
    if abs(abs(z) - 1) < 2e-3 or abs(z + 1) < 0.05:
        return
    got = g_eval_series(GParams([a], [b]), z).value
    want = complex(g11_closed(a, b, z))
    assert abs(got - want) <= 1e-9 * max(1, abs(want))


def _mp(x):
    return mpmath.mpc(x.real, x.imag)


def kummer_split(a1, a2, b, z):
    """1G2 as two products of 1F1, coded from mpmath."""
    total = 0
    for aj, ao in ((a1, a2), (a2, a1)):
        c = 2 * gamma_c_value(b + aj) * gamma_c_value(ao - aj)
        f1 = mpmath.hyp1f1(_mp(b.a + aj.a), _mp(1 - ao.a + aj.a), _mp(z))
        f2 = mpmath.hyp1f1(_mp(b.a_prime + aj.a_prime), _mp(1 - ao.a_prime + aj.a_prime), _mp(-np.conj(z)))
        total += c * complex(dpow(z, aj.k, aj.sigma)) * complex(f1 * f2)
    return total


def bessel_split(a1, a2, z):
    total = 0
    for aj, ao in ((a1, a2), (a2, a1)):
        c = 2 * gamma_c_value(ao - aj)
        f1 = mpmath.hyp0f1(_mp(1 - ao.a + aj.a), _mp(z))
        f2 = mpmath.hyp0f1(_mp(1 - ao.a_prime + aj.a_prime), _mp(np.conj(z)))
        total += c * complex(dpow(z, aj.k, aj.sigma)) * complex(f1 * f2)
    return total


def gauss_split(a1, a2, b1, b2, z):
    total = 0
    for aj, ao in ((a1, a2), (a2, a1)):
        c = 2 * gamma_c_value(b1 + aj) * gamma_c_value(b2 + aj) * gamma_c_value(ao - aj)
        f1 = mpmath.hyp2f1(_mp(b1.a + aj.a), _mp(b2.a + aj.a), _mp(1 - ao.a + aj.a), _mp(z))
        f2 = mpmath.hyp2f1(_mp(b1.a_prime + aj.a_prime), _mp(b2.a_prime + aj.a_prime),
                           _mp(1 - ao.a_prime + aj.a_prime), _mp(np.conj(z)))
        total += c * complex(dpow(z, aj.k, aj.sigma)) * complex(f1 * f2)
    return total


@pytest.mark.parametrize("seed", range(5))
def test_kummer_bessel_gauss_splits(seed):
    rng = np.random.default_rng(seed)
    g = random_params(rng, 1, 2)
    z = 1.7 * np.exp(1j * rng.uniform(-3, 3))
    want = kummer_split(*g.a_list, g.b_list[0], z)
    assert abs(g_eval_series(g, z).value - want) <= 1e-9 * max(1, abs(want))
    g = random_params(rng, 0, 2)
    want = bessel_split(*g.a_list, z)
    assert abs(g_eval_series(g, z).value - want) <= 1e-9 * max(1, abs(want))
    g = random_params(rng, 2, 2)
    z = 0.6 * np.exp(1j * rng.uniform(-3, 3))
    want = gauss_split(*g.a_list, *g.b_list, z)
    assert abs(g_eval_series(g, z).value - want) <= 1e-9 * max(1, abs(want))


def test_array_matches_scalar():
    g = P("1:0.3:0.2;0:0.6:0", "0:0.4:-0.1;-1:0.7:0")
    z = np.array([0.3, -0.5j, 2 + 1j, -4])
    v, e = g_series_array(g, z)
    for zi, vi, ei in zip(z, v, e):
        r = g_eval_series(g, zi)
        assert abs(vi - r.value) <= 1e-13 * max(1, abs(vi))
        assert ei >= 0


def test_error_estimate_is_honest():
    g = P("1:0.3:0.2;0:0.6:0", "0:0.4:-0.1")
    for z in (0.5, 3 - 2j, -6j):
        r = g_eval_series(g, z)
        want = kummer_split(*g.a_list, g.b_list[0], z)
        assert abs(r.value - want) <= max(10 * r.abs_error_estimate, 1e-15 * abs(want))

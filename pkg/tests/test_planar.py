import math

import numpy as np
import pytest

from hypc.gamma import gamma_c_value
from hypc.lattice import LambdaPoint, dpow
from hypc.planar import plane_integral, plane_integral_centered


def test_gaussian():
    assert abs(plane_integral(lambda z: np.exp(-np.abs(z) ** 2)) - math.pi) < 1e-9


def test_off_centre_point_singularity():
    f = lambda z: np.exp(-np.abs(z - 1) ** 2) / np.abs(z - 1)
    assert abs(plane_integral(f, singular=[1]) - math.pi ** 1.5) < 1e-7


def test_tails_extend_power_profiles():
    # 1/(|z| (1+|z|^2)^1.5) integrates to 2 pi; its profile is a power of |z| at both ends
    f = lambda z: 1 / (np.abs(z) * (1 + np.abs(z) ** 2) ** 1.5)
    plain = plane_integral(f, u_range=(-6, 6))
    tailed = plane_integral(f, u_range=(-6, 6), tails=True)
    assert abs(tailed - 2 * math.pi) < 1e-6 < abs(plain - 2 * math.pi)


@pytest.mark.parametrize("B, D", [(LambdaPoint(1, 0.4 + 0.1j), LambdaPoint(-1, 0.35)),
                                  (LambdaPoint(0, 0.7), LambdaPoint(2, 0.5 - 0.2j))])
def test_beta_integral(B, D):
    # int t^(B-1) (1-t)^(D-1) dA = pi gamma_c(B) gamma_c(D) / gamma_c(B+D)
    def f(c, x):
        return dpow(c + x, B.k, B.sigma - 2) * dpow(-((c - 1) + x), D.k, D.sigma - 2)
    got = plane_integral_centered(f, [0.0, 1.0])
    want = math.pi * gamma_c_value(B) * gamma_c_value(D) / gamma_c_value(B + D)
    assert abs(got - want) <= 1e-8 * abs(want)


def test_strip_bridge_with_cusp():
    # |1-|z||^0.3 exp(-|z|^2): a cusp on the unit circle bridged across a thin annulus
    f = lambda z: np.abs(1 - np.abs(z)) ** 0.3 * np.exp(-np.abs(z) ** 2)
    from scipy.integrate import quad
    want = 2 * math.pi * (quad(lambda r: r * abs(1 - r) ** 0.3 * math.exp(-r * r), 0, 1)[0]
                          + quad(lambda r: r * abs(1 - r) ** 0.3 * math.exp(-r * r), 1, 12)[0])
    got = plane_integral(f, strips=[(0.0, 4e-3, 0.3)])
    assert abs(got - want) < 1e-5 * want

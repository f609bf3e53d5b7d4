"""Gamma function of the complex field, its residues, the beta function and Stirling asymptotics.

``gamma_c(a|a') = Gamma(a) / Gamma(1-a') = (-1)^{a-a'} Gamma(a') / Gamma(1-a)``.

Everything is computed in log space from a Lanczos log-gamma, so the ratio stays
finite far up the imaginary direction where both gammas under/overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import Indeterminate, PoleAtPoint
from .lattice import LambdaPoint, dpow

# Lanczos, g = 7, n = 9
_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
_LOG_PI = math.log(math.pi)

POLE_TOL = 1e-9
SWITCH_TOL = 0.05


def _lanczos_lgamma(z):
    # valid for Re z >= 1/2
    w = z - 1.0
    acc = np.full_like(w, _LANCZOS[0])
    for i in range(1, 9):
        acc = acc + _LANCZOS[i] / (w + i)
    t = w + _G + 0.5
    return _HALF_LOG_2PI + (w + 0.5) * np.log(t) - t + np.log(acc)


def log_sin_pi(w):
    """A logarithm of ``sin(pi w)`` that stays finite for large ``|Im w|``."""
    w = np.asarray(w, dtype=complex)
    n = np.round(w.real)
    u = w - n
    out = np.empty_like(u)
    big_up = u.imag > 15
    big_dn = u.imag < -15
    mid = ~(big_up | big_dn)
    with np.errstate(divide="ignore"):
        out[mid] = np.log(np.sin(np.pi * u[mid]))
    uu = u[big_up]
    out[big_up] = -1j * np.pi * uu + np.log((np.exp(2j * np.pi * uu) - 1) / 2j)
    ud = u[big_dn]
    out[big_dn] = 1j * np.pi * ud + np.log((1 - np.exp(-2j * np.pi * ud)) / 2j)
    return out + 1j * np.pi * np.mod(n, 2)


def lgamma_array(z):
    """Vectorised log-gamma; ``+inf`` at the poles. The imaginary part is not normalised."""
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    right = z.real >= 0.5
    out[right] = _lanczos_lgamma(z[right])
    left = ~right
    if np.any(left):
        zl = z[left]
        with np.errstate(divide="ignore", invalid="ignore"):
            ls = log_sin_pi(zl)
            val = _LOG_PI - ls - _lanczos_lgamma(1.0 - zl)
        pole = np.isinf(ls.real)
        val[pole] = np.inf
        out[left] = val
    return out


def log_gamma_complex(z: complex) -> complex:
    """Principal branch of log Gamma: analytic off the cut along the negative real axis."""
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == round(z.real):
        raise PoleAtPoint(f"Gamma has a pole at {z}")
    # log Gamma(z) = log Gamma(z + n) - sum log(z + j) holds on the principal branch
    n = max(0, math.ceil(0.5 - z.real))
    shift = sum(np.log(z + j) for j in range(n)) if n else 0j
    return complex(_lanczos_lgamma(np.array([z + n]))[0] - shift)


def _near_nonpos_int(x, tol):
    n = np.round(x.real)
    return (n <= 0) & (np.abs(x - n) <= tol)


def gamma_c_array(k, sigma):
    """Vectorised ``gamma_c`` on ``(k, sigma)`` arrays; poles come back as ``inf``."""
    k = np.asarray(k)
    sigma = np.asarray(sigma, dtype=complex)
    k, sigma = np.broadcast_arrays(k, sigma)
    a = (k + sigma) / 2
    ap = (-k + sigma) / 2
    a_near = _near_nonpos_int(a, SWITCH_TOL)
    ap_near = _near_nonpos_int(ap, SWITCH_TOL)
    second = a_near & ~ap_near
    with np.errstate(invalid="ignore", over="ignore"):
        first_log = lgamma_array(np.where(second, 1.0, a)) - lgamma_array(np.where(second, 1.0, 1 - ap))
        second_log = lgamma_array(np.where(second, ap, 1.0)) - lgamma_array(np.where(second, 1 - a, 1.0))
        sign = np.where(np.mod(k, 2) == 1, -1.0, 1.0)
        val = np.where(second, sign * np.exp(second_log), np.exp(first_log))
    pole = _near_nonpos_int(a, POLE_TOL) & _near_nonpos_int(ap, POLE_TOL)
    val = np.where(pole, complex(np.inf, 0), val)
    return val


@dataclass(frozen=True)
class GammaValue:
    value: complex
    is_pole: bool = False
    residue: Optional[complex] = None


def gamma_c_residue(m: int, m_prime: int) -> float:
    if m < 0 or m_prime < 0:
        raise ValueError("m and m' must be nonnegative")
    return (-1) ** m / (math.factorial(m) * math.factorial(m_prime))


def gamma_c(p: LambdaPoint) -> GammaValue:
    a, ap = p.a, p.a_prime
    ma, mb = round(a.real), round(ap.real)
    if ma <= 0 and mb <= 0 and abs(a - ma) <= POLE_TOL and abs(ap - mb) <= POLE_TOL:
        return GammaValue(complex(math.inf, 0), True, complex(gamma_c_residue(-ma, -mb)))
    return GammaValue(complex(gamma_c_array(p.k, p.sigma)))


def gamma_c_value(p: LambdaPoint) -> complex:
    """Plain value of ``gamma_c``; raises at a pole."""
    g = gamma_c(p)
    if g.is_pole:
        raise PoleAtPoint(f"gamma_c has a pole at {p}")
    return g.value


def beta_c(p: LambdaPoint, q: LambdaPoint) -> complex:
    """``gamma_c(p) gamma_c(q) / gamma_c(p+q)``; ``inf`` when only the denominator vanishes."""
    gp, gq, gd = gamma_c(p), gamma_c(q), gamma_c(p + q)
    num_pole = gp.is_pole or gq.is_pole
    num_zero = (not gp.is_pole and gp.value == 0) or (not gq.is_pole and gq.value == 0)
    if num_pole and num_zero:
        raise Indeterminate("numerator is a pole times a zero")
    den_zero = not gd.is_pole and gd.value == 0
    if num_pole:
        if gd.is_pole:
            raise Indeterminate("pole over pole")
        return complex(math.inf, 0)
    if den_zero:
        if num_zero:
            raise Indeterminate("zero over zero")
        return complex(math.inf, 0)
    if gd.is_pole:
        return 0j
    return gp.value * gq.value / gd.value


def gamma_c_asymptotic(base: LambdaPoint, xi: LambdaPoint) -> complex:
    """Leading Stirling term of ``gamma_c(base + xi)`` for ``xi = (k + i s)/2`` large."""
    x = xi.a
    phase = 2 * (x * np.log(x) - x).imag
    return complex(np.exp(1j * phase) * dpow(x, base.k, base.sigma - 1))

"""Numerical verification of the functional identities, closed forms and integral relations of pGq."""
from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from .errors import DegenerateMatrix, NonUnimodular, ParameterCollision, UnknownSuite
from .gamma import gamma_c_asymptotic, gamma_c_value
from .kernel import GParams, detect_collisions
from .lattice import LambdaList, LambdaPoint, dpow, sum_k
from .planar import plane_integral_centered
from .residue import RESONANCE_TOL, g_eval_series, g_series_array

ONE_ZERO = LambdaPoint(1, 1)  # 1|0
ZERO_ONE = LambdaPoint(-1, 1)  # 0|1


@dataclass
class IdentityCheck:
    name: str
    sampler: str
    residual: float
    tolerance: float
    passed: bool = field(init=False)
    witness: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.passed = bool(self.residual <= self.tolerance)

    def to_dict(self) -> dict:
        return {"name": self.name, "residual": self.residual, "tol": self.tolerance,
                "passed": self.passed, "witness": self.witness, "sampler": self.sampler}


@dataclass
class VerificationReport:
    suite: str
    seed: int
    checks: List[IdentityCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "seed": self.seed,
                "checks": [c.to_dict() for c in self.checks], "passed": self.passed}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), default=_jsonable)


def _jsonable(x):
    if isinstance(x, complex) or isinstance(x, np.complexfloating):
        return {"re": float(x.real), "im": float(x.imag)}
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, (LambdaPoint, LambdaList, GParams)):
        return x.to_text() if not isinstance(x, GParams) else x.to_dict()
    return str(x)


def rel_residual(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def _G(params: GParams, z: complex, **kw) -> complex:
    return g_eval_series(params, z, **kw).value


# ---------------------------------------------------------------- sampling

def random_point(rng: np.random.Generator, re=(0.1, 0.9), im=(-0.5, 0.5), k=(-2, 2)) -> LambdaPoint:
    return LambdaPoint(int(rng.integers(k[0], k[1] + 1)), complex(rng.uniform(*re), rng.uniform(*im)))


def _far_from_int(x: complex, gap: float) -> bool:
    return abs(x - round(x.real)) > gap


def is_generic(params: GParams, gap: float = 0.05) -> bool:
    """No collisions, no resonances and no pole of a series coefficient within ``gap``."""
    a, b = params.a_list, params.b_list
    for i, x in enumerate(a):
        for y in a[i + 1:]:
            if not _far_from_int((x - y).a, gap):
                return False
        for y in b:
            s = x + y
            if not (_far_from_int(s.a, gap) or _far_from_int(s.a_prime, gap)):
                return False
    for i, x in enumerate(b):
        for y in b[i + 1:]:
            if not _far_from_int((x - y).a, gap):
                return False
    return True


def random_params(rng: np.random.Generator, p: int, q: int, **kw) -> GParams:
    while True:
        P = GParams([random_point(rng, **kw) for _ in range(q)], [random_point(rng, **kw) for _ in range(p)])
        if is_generic(P):
            return P


def random_z(rng: np.random.Generator, p: int, q: int, rmin: float = 0.2, rmax: float = 5.0) -> complex:
    while True:
        r = math.exp(rng.uniform(math.log(rmin), math.log(rmax)))
        if p == q and 0.8 < r < 1.25:
            continue
        return complex(r * np.exp(1j * rng.uniform(-np.pi, np.pi)))


# ---------------------------------------------------------------- closed forms

def g01_closed(a: LambdaPoint, z):
    """``0G1`` in elementary form: ``2 z^a exp(-z + conj z)``."""
    z = np.asarray(z, complex)
    return 2 * dpow(z, a.k, a.sigma) * np.exp(-z + np.conj(z))


def g11_closed(a: LambdaPoint, b: LambdaPoint, z):
    """``1G1`` in elementary form: ``2 gamma_c(a+b) z^a (1+z)^-(a+b)``."""
    z = np.asarray(z, complex)
    c = a + b
    return 2 * gamma_c_value(c) * dpow(z, a.k, a.sigma) * dpow(1 + z, -c.k, -c.sigma)


# ---------------------------------------------------------------- exact-evaluation identities

def check_inversion(params: GParams, z: complex, tol: float = 1e-8) -> IdentityCheck:
    lhs = _G(params, z)
    rhs = _G(params.swapped(), 1 / z)
    return IdentityCheck("inversion", "params, z", rel_residual(lhs, rhs), tol,
                         {"params": params, "z": z, "lhs": lhs, "rhs": rhs})


def conjugate_params(params: GParams) -> GParams:
    """``(a'|a)`` for every parameter, i.e. ``k -> -k``."""
    return GParams([LambdaPoint(-x.k, x.sigma) for x in params.a_list],
                   [LambdaPoint(-x.k, x.sigma) for x in params.b_list])


def check_conjugation(params: GParams, z: complex, tol: float = 1e-8) -> IdentityCheck:
    """Reversing the summation index: ``G[(a|a');(b|b'); z] = (-1)^(sum k) G[(a'|a);(b'|b); (-1)^(p+q) conj z]``.

    The naive form with unchanged parameters and argument ``conj z`` is evaluated too and
    its residual kept in the witness.
    """
    sign = (-1) ** sum_k(list(params.a_list) + list(params.b_list))
    lhs = _G(params, z)
    rhs = sign * _G(conjugate_params(params), (-1) ** (params.p + params.q) * np.conj(z))
    naive = sign * _G(params, np.conj(z))
    return IdentityCheck("conjugation", "params, z", rel_residual(lhs, rhs), tol,
                         {"params": params, "z": z, "lhs": lhs, "rhs": rhs,
                          "naive_residual": rel_residual(lhs, naive)})


def check_cancellation(params: GParams, c: LambdaPoint, z: complex, tol: float = 1e-8) -> IdentityCheck:
    """Appending ``c`` above and ``1 - c`` below multiplies the integrand by ``(-1)^(k_c + k)``.

    The extra ``(-1)^k`` turns into the argument ``-z``.
    """
    cc = c.complement()
    if detect_collisions(GParams(params.a_list + [c], params.b_list)) or \
            detect_collisions(GParams(params.a_list, params.b_list + [cc])):
        raise ParameterCollision(f"{c} collides with the existing parameters")
    big = GParams(params.a_list + [c], params.b_list + [cc])
    lhs = _G(big, z, allow_collision=True)
    rhs = (-1) ** c.k * _G(params, -z)
    return IdentityCheck("cancellation", "params, c, z", rel_residual(lhs, rhs), tol,
                         {"params": params, "c": c, "z": z, "lhs": lhs, "rhs": rhs})


def check_shift(params: GParams, c: LambdaPoint, z: complex, tol: float = 1e-8) -> IdentityCheck:
    lhs = complex(dpow(z, c.k, c.sigma)) * _G(params, z)
    rhs = _G(GParams(params.a_list.plus(c), params.b_list.minus(c)), z)
    return IdentityCheck("shift", "params, c, z", rel_residual(lhs, rhs), tol,
                         {"params": params, "c": c, "z": z, "lhs": lhs, "rhs": rhs})


def _shift_a(params: GParams, j: int, h: LambdaPoint) -> GParams:
    return GParams(params.a_list.replace(j, params.a_list[j] + h), params.b_list)


def _shift_b(params: GParams, m: int, h: LambdaPoint) -> GParams:
    return GParams(params.a_list, params.b_list.replace(m, params.b_list[m] + h))


def check_recombination(params: GParams, z: complex, j: int, m: int, kind: str,
                        tol: float = 1e-8) -> IdentityCheck:
    """``G[a_j+1] - G[a_m+1] = (a_j - a_m) G`` (kind "aa") or ``G[a_j+1] + G[b_m+1] = (a_j + b_m) G`` ("ab")."""
    g = _G(params, z)
    left = _G(_shift_a(params, j, ONE_ZERO), z)
    if kind == "aa":
        lhs = left - _G(_shift_a(params, m, ONE_ZERO), z)
        rhs = (params.a_list[j].a - params.a_list[m].a) * g
    elif kind == "ab":
        lhs = left + _G(_shift_b(params, m, ONE_ZERO), z)
        rhs = (params.a_list[j].a + params.b_list[m].a) * g
    else:
        raise ValueError(f"unknown recombination {kind!r}")
    return IdentityCheck(f"recombination-{kind}", "params, z, j, m", rel_residual(lhs, rhs), tol,
                         {"params": params, "z": z, "j": j, "m": m, "lhs": lhs, "rhs": rhs})


# ---------------------------------------------------------------- finite-difference identities

def euler_theta(f: Callable, h: float, conj: bool = False) -> Callable:
    """``z d/dz`` (or ``conj(z) d/d conj(z)``) by central differences in Re z and Im z."""
    s = 1j if conj else -1j

    def g(z):
        z = np.asarray(z, complex)
        d = f(z + h) - f(z - h) + s * (f(z + 1j * h) - f(z - 1j * h))
        w = np.conj(z) if conj else z
        return w * d / (4 * h)
    return g


def _array_g(params: GParams) -> Callable:
    return lambda z: g_series_array(params, z)[0]


CONTIGUOUS = ("A-diff1", "A-diff2", "A-diff3", "A-diff4")


def check_contiguous(params: GParams, z: complex, index: int, which: str, h: Optional[float] = None,
                     tol: float = 1e-5) -> IdentityCheck:
    """First-order contiguous relations: an Euler operator on G against a shifted-parameter G."""
    h = h if h is not None else 1e-5 * max(1.0, abs(z))
    f = _array_g(params)
    zz = np.array([z])
    if which == "A-diff1":
        lhs = -euler_theta(f, h)(zz)[0] + params.a_list[index].a * f(zz)[0]
        rhs = _G(_shift_a(params, index, ONE_ZERO), z)
    elif which == "A-diff2":
        lhs = euler_theta(f, h)(zz)[0] + params.b_list[index].a * f(zz)[0]
        rhs = _G(_shift_b(params, index, ONE_ZERO), z)
    elif which == "A-diff3":
        lhs = -euler_theta(f, h, conj=True)(zz)[0] + params.a_list[index].a_prime * f(zz)[0]
        rhs = -_G(_shift_a(params, index, ZERO_ONE), z)
    elif which == "A-diff4":
        lhs = euler_theta(f, h, conj=True)(zz)[0] + params.b_list[index].a_prime * f(zz)[0]
        rhs = -_G(_shift_b(params, index, ZERO_ONE), z)
    else:
        raise ValueError(f"unknown relation {which!r}")
    return IdentityCheck(which, "params, z, index", rel_residual(lhs, rhs), tol,
                         {"params": params, "z": z, "index": index, "h": h, "lhs": lhs, "rhs": rhs})


def _factor_product(f: Callable, consts: Sequence[complex], sign: int, h: float, conj: bool) -> Callable:
    """``prod_c (theta + sign * c)`` applied to ``f``."""
    g = f
    for c in consts:
        g = (lambda inner, c: (lambda z: euler_theta(inner, h, conj)(z) + sign * c * inner(z)))(g, c)
    return g


def pde_residuals(params: GParams, z: complex, h: float):
    """``(residual, terms)`` for both differential operators at ``z`` with step ``h``.

    ``D = (-1)^q prod(theta - a) - z prod(theta + b)`` and the conjugate operator with
    ``a'``, ``b'``, ``(-1)^p`` and ``conj(z)``.
    """
    f = _array_g(params)
    zz = np.array([z])
    p, q = params.p, params.q
    t1 = (-1) ** q * _factor_product(f, [x.a for x in params.a_list], -1, h, False)(zz)[0]
    t2 = z * _factor_product(f, [x.a for x in params.b_list], 1, h, False)(zz)[0]
    t3 = (-1) ** p * _factor_product(f, [x.a_prime for x in params.a_list], -1, h, True)(zz)[0]
    t4 = np.conj(z) * _factor_product(f, [x.a_prime for x in params.b_list], 1, h, True)(zz)[0]
    scale = max(abs(t1), abs(t2), abs(t3), abs(t4), 1e-300)
    return (abs(t1 - t2) + abs(t3 - t4)) / scale, (t1, t2, t3, t4)


def check_pde(params: GParams, z: complex, h: float = 1e-3, tol: float = 1e-4) -> IdentityCheck:
    hh = h * abs(z)
    r, terms = pde_residuals(params, z, hh)
    r2, _ = pde_residuals(params, z, hh / 2)
    return IdentityCheck("pde", "params, z", float(r), tol,
                         {"params": params, "z": z, "h": hh, "residual_half_step": float(r2),
                          "reduction": float(r / r2) if r2 > 0 else math.inf})


# ---------------------------------------------------------------- multiplication

def replicated_params(params: GParams, m: int) -> GParams:
    """Each parameter ``x`` replaced by ``x + j/m | x' + j/m`` for ``j = 0..m-1``."""
    rep = lambda xs: [LambdaPoint(x.k, x.sigma + 2 * j / m) for x in xs for j in range(m)]
    return GParams(rep(params.a_list), rep(params.b_list))


def multiplication_rhs(params: GParams, m: int, z: complex, inner: float) -> complex:
    """``sum_l G[(ma);(mb); exp(2 pi i l/m) z^(1/m) inner]`` without the outer prefactor."""
    big = GParams([x.scaled(m) for x in params.a_list], [x.scaled(m) for x in params.b_list])
    root = abs(z) ** (1 / m) * np.exp(1j * np.angle(z) / m)
    w = root * inner * np.exp(2j * np.pi * np.arange(m) / m)
    return complex(np.sum(g_series_array(big, w)[0]))


def check_multiplication(params: GParams, m: int, zs: Sequence[complex], tol: float = 1e-6) -> IdentityCheck:
    """Ratio of the replicated-parameter G to the sum over m-th roots, across several ``z``.

    With the argument scale ``m^(q-p)`` the ratio is the constant ``m^(p+q-2-m*upsilon)``;
    the residual is its relative spread.  The spread under the scale ``m^(m(p-q))`` is
    reported alongside.
    """
    p, q = params.p, params.q
    ups = sum(x.sigma for x in params.a_list) + sum(x.sigma for x in params.b_list)
    rep = replicated_params(params, m)
    lhs = np.array([_G(rep, z) for z in zs])

    def spread(inner):
        r = lhs / np.array([multiplication_rhs(params, m, z, inner) for z in zs])
        return r, float(np.max(np.abs(r - r[0])) / abs(r[0]))

    ratios, res = spread(float(m) ** (q - p))
    _, alt = spread(float(m) ** (m * (p - q)))
    return IdentityCheck("multiplication", "params, m, z-set", res, tol,
                         {"params": params, "m": m, "z": list(zs), "fitted_constant": complex(ratios[0]),
                          "ratios": [complex(r) for r in ratios],
                          "prefactor_derived": complex(m ** (p + q - 2 - m * ups)),
                          "prefactor_printed": complex(m ** (p + q - 2 - ups)),
                          "spread_inner_m^(m(p-q))": alt})


# ---------------------------------------------------------------- Euler integral and Vilenkin kernel

def _is_zero(x: LambdaPoint) -> bool:
    return x.k == 0 and abs(x.sigma) < RESONANCE_TOL


def hyp2f1_c(A: LambdaPoint, B: LambdaPoint, C: LambdaPoint, z: complex) -> complex:
    """``2F1c`` through ``2G2``: ``gamma_c(C) (-1)^k_C / (2 gamma_c(A) gamma_c(B)) 2G2[(0|0, 1-C); (A, B); z]``.

    Normalised so that the value at ``z = 0`` is 1.
    """
    if _is_zero(A) or _is_zero(B):
        return 1.0 + 0j
    c = gamma_c_value(C) * (-1) ** C.k / (2 * gamma_c_value(A) * gamma_c_value(B))
    return c * _G(GParams([LambdaPoint(0, 0), C.complement()], [A, B]), z)


def hyp2f1_c_euler(A: LambdaPoint, B: LambdaPoint, C: LambdaPoint, z: complex, **kw) -> complex:
    """``(1/pi) gamma_c(C) / (gamma_c(B) gamma_c(C-B)) int t^(B-1) (1-t)^(C-B-1) (1-zt)^(-A) dA(t)``."""
    D = C - B
    roots = [0.0, 1.0] + ([1 / z] if z != 0 else [])

    def f(c, x):
        out = dpow((c - roots[0]) + x, B.k, B.sigma - 2) * dpow(-((c - roots[1]) + x), D.k, D.sigma - 2)
        if z == 0:
            return out
        return out * dpow(-z * ((c - roots[2]) + x), -A.k, -A.sigma)
    val = plane_integral_centered(f, roots, **kw)
    return gamma_c_value(C) / (np.pi * gamma_c_value(B) * gamma_c_value(D)) * val


def check_gauss_euler(A: LambdaPoint, B: LambdaPoint, C: LambdaPoint, z: complex, tol: float = 1e-3) -> IdentityCheck:
    lhs = hyp2f1_c_euler(A, B, C, z)
    rhs = hyp2f1_c(A, B, C, z)
    return IdentityCheck("gauss_euler", "A, B, C, z", rel_residual(lhs, rhs), tol,
                         {"A": A, "B": B, "C": C, "z": z, "lhs": lhs, "rhs": rhs})


def _matrix(g):
    g = np.asarray(g, dtype=complex)
    if g.shape != (2, 2):
        raise ValueError("g must be a 2x2 matrix")
    a, b, c, d = g.ravel()
    if abs(a * d - b * c - 1) > 1e-10:
        raise NonUnimodular(f"det g = {a * d - b * c}")
    if min(abs(a), abs(b), abs(c), abs(d)) == 0:
        raise DegenerateMatrix("all entries of g must be nonzero")
    return a, b, c, d


def vilenkin_kernel(mu: LambdaPoint, lam: LambdaPoint, sig: LambdaPoint, g) -> complex:
    """``int z^(mu-1) (a+zc)^(sig-lam-1) (b+zd)^lam dA(z)`` in closed form.

    ``(-1)^k_mu a^(sig-lam+mu-1) b^lam c^(-mu) pi gamma_c(mu) gamma_c(sig-lam) / gamma_c(sig-lam+mu)``
    times ``2F1c[-lam, mu; sig-lam+mu; ad/bc]``.
    """
    a, b, c, d = _matrix(g)
    sl = sig - lam
    e = sl + mu
    out = (-1) ** mu.k * dpow(a, e.k, e.sigma - 2) * dpow(b, lam.k, lam.sigma) * dpow(c, -mu.k, -mu.sigma)
    out = out * np.pi * gamma_c_value(mu) * gamma_c_value(sl) / gamma_c_value(e)
    return complex(out * hyp2f1_c(-lam, mu, e, a * d / (b * c)))


def vilenkin_direct(mu: LambdaPoint, lam: LambdaPoint, sig: LambdaPoint, g, **kw) -> complex:
    a, b, c, d = _matrix(g)
    sl = sig - lam
    roots = [0.0, -a / c, -b / d]

    def f(z0, x):
        return dpow((z0 - roots[0]) + x, mu.k, mu.sigma - 2) * dpow(c * ((z0 - roots[1]) + x), sl.k, sl.sigma - 2) \
            * dpow(d * ((z0 - roots[2]) + x), lam.k, lam.sigma)
    return complex(plane_integral_centered(f, roots, **kw))


def check_vilenkin(mu, lam, sig, g, tol: float = 1e-3) -> IdentityCheck:
    lhs = vilenkin_direct(mu, lam, sig, g)
    rhs = vilenkin_kernel(mu, lam, sig, g)
    return IdentityCheck("vilenkin", "mu, lam, sig, g", rel_residual(lhs, rhs), tol,
                         {"mu": mu, "lam": lam, "sig": sig, "g": np.asarray(g).tolist(), "lhs": lhs, "rhs": rhs})


# ---------------------------------------------------------------- suites

def _gamma_point(rng) -> LambdaPoint:
    while True:
        p = LambdaPoint(int(rng.integers(-6, 7)), complex(rng.uniform(-6, 6), rng.uniform(-2, 2)))
        if _far_from_int(p.a, 0.05) and _far_from_int(p.a_prime, 0.05) and \
                _far_from_int(1 - p.a, 0.05) and _far_from_int(1 - p.a_prime, 0.05):
            return p


def _poch(x: complex, m: int) -> complex:
    out = 1 + 0j
    for i in range(m):
        out *= x + i
    return out


def _suite_gamma(rng, tol):
    x = _gamma_point(rng)
    g = gamma_c_value(x)
    m, mp = int(rng.integers(0, 5)), int(rng.integers(0, 5))
    res = {
        "transposition": rel_residual(g, (-1) ** x.k * gamma_c_value(LambdaPoint(-x.k, x.sigma))),
        "reflection": rel_residual(g * gamma_c_value(x.complement()), (-1) ** x.k),
        "shift_up": rel_residual(gamma_c_value(x.shifted(m, mp)),
                                 (-1) ** mp * g * _poch(x.a, m) * _poch(x.a_prime, mp)),
        "shift_down": rel_residual(gamma_c_value(x.shifted(-m, -mp)),
                                   (-1) ** m * g / (_poch(1 - x.a, m) * _poch(1 - x.a_prime, mp))),
    }
    for kappa in (2, 3):
        y = LambdaPoint(x.k, x.sigma / kappa)
        lhs = np.prod([gamma_c_value(LambdaPoint(y.k, y.sigma + 2 * j / kappa)) for j in range(kappa)])
        res[f"multiplication_{kappa}"] = rel_residual(
            lhs, gamma_c_value(y.scaled(kappa)) * kappa ** (1 - y.sigma * kappa))
    return [IdentityCheck(f"gamma_{n}", "lattice point |k|<=6, |Re sigma|<=6", r, tol, {"point": x, "m": m, "m_prime": mp})
            for n, r in res.items()]


def _suite_asymptotics(rng, tol):
    base = random_point(rng)
    s = 10 ** rng.uniform(3, 4.5)
    xi = LambdaPoint(int(rng.integers(-3, 4)), 1j * s * (1 if rng.random() < 0.5 else -1))
    ratio = gamma_c_value(base + xi) / gamma_c_asymptotic(base, xi)
    bound = 10 * (1 + abs(base.sigma) ** 2) / abs(xi.a)
    return [IdentityCheck("stirling", "base, |xi| in [5e2, 2e4]", abs(ratio - 1), max(tol, bound),
                          {"base": base, "xi": xi, "ratio": ratio})]


def _cross_sample(rng):
    """Parameters for the integral: absolutely convergent and contour-separable, with an evaluable series."""
    from .kernel import separating_contour
    from .errors import HypcError
    while True:
        p, q = (int(v) for v in rng.integers(0, 4, 2))
        if p + q == 0:
            continue
        pts = [LambdaPoint(int(rng.integers(-2, 3)), complex(rng.uniform(-0.8, 0.9), rng.uniform(-1, 1)))
               for _ in range(p + q)]
        P = GParams(pts[:q], pts[q:])
        if P.upsilon > p + q - 1.1 or not is_generic(P, 1e-3):
            continue
        lo, hi = (0.2, 0.8) if rng.random() < 0.5 else (1.25, 5.0)
        z = complex(math.exp(rng.uniform(math.log(lo), math.log(hi))) * np.exp(1j * rng.uniform(-np.pi, np.pi)))
        try:
            for k in range(-3, 4):
                separating_contour(P, k)
            _G(P, z)
        except HypcError:
            continue
        return P, z


def _suite_engines(rng, tol):
    from .quadrature import g_eval_quad
    P, z = _cross_sample(rng)
    s = _G(P, z)
    qv = g_eval_quad(P, z)
    return [IdentityCheck("cross_engine", "p,q<=3, upsilon<=p+q-1.1", abs(qv.value - s) / (1 + abs(s)), tol,
                          {"params": P, "z": z, "series": s, "quad": qv.value,
                           "quad_error_estimate": qv.abs_error_estimate})]


def _suite_closed_forms(rng, tol):
    a, b = random_point(rng), random_point(rng)
    z = random_z(rng, 1, 1)
    out = [IdentityCheck("closed_0G1", "a, z", rel_residual(_G(GParams([a], []), z), complex(g01_closed(a, z))), tol,
                         {"a": a, "z": z}),
           IdentityCheck("closed_1G1", "a, b, z", rel_residual(_G(GParams([a], [b]), z), complex(g11_closed(a, b, z))),
                         tol, {"a": a, "b": b, "z": z})]
    return out


def _suite_identities(rng, tol):
    while True:
        p, q = (int(v) for v in rng.integers(0, 3, 2))
        if p + q:
            break
    P = random_params(rng, p, q)
    z = random_z(rng, p, q)
    out = [check_inversion(P, z, tol), check_conjugation(P, z, tol)]
    while True:
        c = random_point(rng)
        try:
            out.append(check_cancellation(P, c, z, tol))
            break
        except ParameterCollision:
            continue
    out.append(check_shift(P, random_point(rng), z, tol))
    fd_tol = max(tol, 1e-5)
    for j in range(q):
        out += [check_contiguous(P, z, j, "A-diff1", tol=fd_tol), check_contiguous(P, z, j, "A-diff3", tol=fd_tol)]
    for m in range(p):
        out += [check_contiguous(P, z, m, "A-diff2", tol=fd_tol), check_contiguous(P, z, m, "A-diff4", tol=fd_tol)]
    if q > 1:
        out.append(check_recombination(P, z, 0, 1, "aa", tol))
    if p and q:
        out.append(check_recombination(P, z, 0, 0, "ab", tol))
    return out


def _suite_pde(rng, tol):
    while True:
        p, q = (int(v) for v in rng.integers(0, 3, 2))
        if p + q:
            break
    P = random_params(rng, p, q)
    return [check_pde(P, random_z(rng, p, q), tol=max(tol, 1e-4))]


def _suite_multiplication(rng, tol):
    P = random_params(rng, 1, 2)
    zs = [random_z(rng, 1, 2, 0.3, 3.0) for _ in range(5)]
    return [check_multiplication(P, 2, zs, tol)]


def _euler_params(rng):
    A, B, D = [LambdaPoint(int(rng.integers(-1, 2)), complex(rng.uniform(.3, .9), rng.uniform(-.3, .3)))
               for _ in range(3)]
    return A, B, B + D


def _suite_euler(rng, tol):
    A, B, C = _euler_params(rng)
    return [check_gauss_euler(A, B, C, 0.4, tol)]


VILENKIN_G = ((2, 1), (1, 1))


def _vilenkin_params(rng):
    mu = LambdaPoint(int(rng.integers(-1, 2)), complex(rng.uniform(.3, .7), rng.uniform(-.3, .3)))
    sig = LambdaPoint(int(rng.integers(-1, 2)), complex(rng.uniform(.6, 1.0), rng.uniform(-.3, .3)))
    lam = LambdaPoint(int(rng.integers(-1, 2)), complex(rng.uniform(-.3, .3), rng.uniform(-.3, .3)))
    return mu, lam, sig


def _suite_vilenkin(rng, tol):
    mu, lam, sig = _vilenkin_params(rng)
    return [check_vilenkin(mu, lam, sig, VILENKIN_G, tol)]


CONV_PAIR = (GParams.from_text("0:0.4:0", "0:0.4:0"), GParams.from_text("1:0.3:0.2", "0:0.5:0"))


def _suite_convolution(rng, tol):
    from .quadrature import convolve_g
    P1, P2 = CONV_PAIR
    merged = GParams(P1.a_list + P2.a_list, P1.b_list + P2.b_list)
    t = random_z(rng, 2, 2, 0.3, 3.0)
    lhs = convolve_g(P1, P2, t)
    rhs = _G(merged, t)
    return [IdentityCheck("convolution", "fixed 1G1 pair, t", rel_residual(lhs, rhs), tol,
                          {"t": t, "lhs": lhs, "rhs": rhs})]


SUITES: Dict[str, Callable] = {
    "gamma": _suite_gamma,
    "asymptotics": _suite_asymptotics,
    "engines": _suite_engines,
    "closed_forms": _suite_closed_forms,
    "identities": _suite_identities,
    "pde": _suite_pde,
    "multiplication": _suite_multiplication,
    "euler": _suite_euler,
    "vilenkin": _suite_vilenkin,
    "convolution": _suite_convolution,
}

# identity displays and the checks that cover them
IDENTITY_MAP = {
    "inversion": check_inversion,
    "conjugation": check_conjugation,
    "cancellation": check_cancellation,
    "shift": check_shift,
    "A-diff1": check_contiguous,
    "A-diff2": check_contiguous,
    "A-diff3": check_contiguous,
    "A-diff4": check_contiguous,
    "recombination-aa": check_recombination,
    "recombination-ab": check_recombination,
    "A-product": check_multiplication,
}


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("HYPC_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(name: str, samples: int, seed: int, tol: float) -> VerificationReport:
    """Run ``samples`` independent draws of a suite; each draw has its own child seed."""
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    fn = SUITES[name]
    rngs = [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(samples)]
    n = _threads()
    if n == 1:
        parts = [fn(r, tol) for r in rngs]
    else:
        with ThreadPoolExecutor(max_workers=n) as ex:
            parts = list(ex.map(lambda r: fn(r, tol), rngs))
    return VerificationReport(name, seed, [c for part in parts for c in part])

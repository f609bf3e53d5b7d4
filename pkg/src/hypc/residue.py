"""Evaluation of pGq through the sums over left (or right) poles.

Each residue family collapses to a product of two classical ``pF_{q-1}`` series, one in
``(-1)^q z`` and one in ``(-1)^p conj(z)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict

import numpy as np

from .errors import OnUnitCircle, ParameterCollision, PoleAtPoint, ResonantParameters
from .gamma import gamma_c
from .kernel import GParams, classify_convergence, detect_collisions
from .lattice import dpow
from .series import DELTA_CIRCLE, pfq_array

RESONANCE_TOL = 1e-8
_EPS = np.finfo(float).eps


@dataclass
class EvalResult:
    value: complex
    abs_error_estimate: float
    engine: str
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "value": {"re": self.value.real, "im": self.value.imag},
            "error": self.abs_error_estimate,
            "engine": self.engine,
            "diagnostics": self.diagnostics,
        }


def check_resonance(params: GParams) -> None:
    a = params.a_list
    for j in range(len(a)):
        for al in range(len(a)):
            if al == j:
                continue
            d = a[al].a - a[j].a
            if abs(d - round(d.real)) <= RESONANCE_TOL:
                raise ResonantParameters(
                    f"a_{al + 1} - a_{j + 1} = {d} is an integer; the pole sum is singular here")


def _coefficient(params: GParams, j: int) -> complex:
    aj = params.a_list[j]
    c = 2.0 + 0j
    for b in params.b_list:
        g = gamma_c(b + aj)
        if g.is_pole:
            raise PoleAtPoint(f"gamma_c(b + a_{j + 1}) has a pole; G is singular at these parameters")
        c *= g.value
    for al, x in enumerate(params.a_list):
        if al != j:
            g = gamma_c(x - aj)
            if g.is_pole:
                raise ResonantParameters("resonant a-parameters")
            c *= g.value
    return c


def sigma_plus_array(params: GParams, z):
    """``(values, abs_errors, terms)`` of the left-pole sum for an array of ``z``."""
    z = np.asarray(z, dtype=complex)
    p, q = params.p, params.q
    check_resonance(params)
    if p == q and z.size and np.max(np.abs(z)) >= 1 - DELTA_CIRCLE:
        raise OnUnitCircle(f"|z| must be < {1 - DELTA_CIRCLE} for the p = q left-pole sum")
    total = np.zeros_like(z)
    err = np.zeros(z.shape)
    terms = []
    a = params.a_list
    for j, aj in enumerate(a):
        coef = _coefficient(params, j)
        num1 = [b.a + aj.a for b in params.b_list]
        den1 = [1 - x.a + aj.a for al, x in enumerate(a) if al != j]
        num2 = [b.a_prime + aj.a_prime for b in params.b_list]
        den2 = [1 - x.a_prime + aj.a_prime for al, x in enumerate(a) if al != j]
        f1, e1, n1 = pfq_array(num1, den1, (-1) ** q * z)
        f2, e2, n2 = pfq_array(num2, den2, (-1) ** p * np.conj(z))
        pw = dpow(z, aj.k, aj.sigma)
        term = coef * pw * f1 * f2
        total = total + term
        err = err + np.abs(coef * pw) * (np.abs(f1) * e2 + np.abs(f2) * e1 + e1 * e2) \
            + 8 * (p + q + 2) * _EPS * np.abs(term)
        terms.append((n1, n2))
    return total, err, terms


def sigma_plus(params: GParams, z: complex) -> EvalResult:
    z = complex(z)
    if z == 0:
        raise ValueError("z must be nonzero")
    v, e, terms = sigma_plus_array(params, np.array([z]))
    return EvalResult(complex(v[0]), float(e[0]), "ResidueSeries",
                      {"branch": "sigma_plus", "j_summands": params.q, "terms": terms})


def sigma_minus(params: GParams, z: complex) -> EvalResult:
    z = complex(z)
    if z == 0:
        raise ValueError("z must be nonzero")
    res = sigma_plus(params.swapped(), 1 / z)
    res.diagnostics["branch"] = "sigma_minus"
    return res


def _dispatch(params: GParams, absz: float) -> str:
    p, q = params.p, params.q
    if q > p:
        return "plus"
    if q < p:
        return "minus"
    if absz < 1 - DELTA_CIRCLE:
        return "plus"
    if absz > 1 + DELTA_CIRCLE:
        return "minus"
    raise OnUnitCircle(f"p = q and |z| = {absz} is within {DELTA_CIRCLE} of the unit circle")


def _check_domain(params: GParams, allow_collision: bool) -> None:
    if params.p + params.q == 0:
        raise ValueError("need at least one parameter")
    if not allow_collision:
        cols = detect_collisions(params)
        if cols:
            raise ParameterCollision(f"left and right poles collide: {cols}")


def g_eval_series(params: GParams, z: complex, *, allow_collision: bool = False) -> EvalResult:
    """``pGq(z)`` from the pole sums: left poles for q > p (or |z| < 1 when p = q), right poles otherwise.

    Outside the convergence domain of the integral the sums give its meromorphic
    continuation; the convergence class is reported in the diagnostics.
    ``allow_collision`` skips the collision test, for parameter lists whose colliding
    gamma factors cancel (a pair ``c``, ``1 - c``).
    """
    z = complex(z)
    if z == 0:
        raise ValueError("z must be nonzero")
    _check_domain(params, allow_collision)
    branch = _dispatch(params, abs(z))
    res = sigma_plus(params, z) if branch == "plus" else sigma_minus(params, z)
    res.diagnostics["convergence"] = classify_convergence(params).kind.value
    return res


def g_series_array(params: GParams, z, *, allow_collision: bool = False):
    """Vectorised :func:`g_eval_series`; returns ``(values, abs_errors)``."""
    z = np.asarray(z, dtype=complex)
    _check_domain(params, allow_collision)
    out = np.empty_like(z)
    err = np.empty(z.shape)
    az = np.abs(z)
    p, q = params.p, params.q
    if q > p:
        plus = np.ones(z.shape, bool)
    elif q < p:
        plus = np.zeros(z.shape, bool)
    else:
        if np.any(np.abs(az - 1) <= DELTA_CIRCLE):
            raise OnUnitCircle("some |z| are too close to the unit circle")
        plus = az < 1
    if np.any(plus):
        v, e, _ = sigma_plus_array(params, z[plus])
        out[plus], err[plus] = v, e
    if np.any(~plus):
        v, e, _ = sigma_plus_array(params.swapped(), 1 / z[~plus])
        out[~plus], err[~plus] = v, e
    return out, err

"""Pochhammer symbols and the generalized hypergeometric series rFs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, DenominatorPole, SeriesDivergent

DELTA_CIRCLE = 1e-3
TERM_CAP = 20_000
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    abs_error_estimate: float
    terms_used: int


def pochhammer(a: complex, m: int) -> complex:
    if m < 0:
        raise ValueError("m must be nonnegative")
    out = 1.0 + 0j
    for i in range(m):
        out *= a + i
    return out


def _check_params(num, den, zmax):
    for b in den:
        n = round(b.real)
        if n <= 0 and abs(b - n) < 1e-14:
            raise DenominatorPole(f"denominator parameter {b} is a nonpositive integer")
    r, s = len(num), len(den)
    if any(round(a.real) <= 0 and abs(a - round(a.real)) < 1e-14 for a in num):
        return  # terminating: a polynomial in z
    if r > s + 1:
        raise SeriesDivergent(f"{r}F{s} diverges for every z != 0")
    if r == s + 1 and zmax >= 1 - DELTA_CIRCLE:
        raise SeriesDivergent(f"|z| = {zmax} is outside the disk |z| < 1 - {DELTA_CIRCLE}")


def pfq_array(num: Sequence[complex], den: Sequence[complex], z, *,
              tol_rel: float = 1e-16, tol_abs: float = 1e-300, cap: int = TERM_CAP):
    """Vectorised rFs over an array of arguments.

    Returns ``(values, abs_error, terms_used)`` with the first two shaped like ``z``.
    Stops once two consecutive terms are below ``tol_rel*|sum| + tol_abs`` everywhere.
    """
    z = np.asarray(z, dtype=complex)
    num = [complex(a) for a in num]
    den = [complex(b) for b in den]
    shape = z.shape
    z = z.ravel()
    _check_params(num, den, float(np.max(np.abs(z))) if z.size else 0.0)
    total = np.ones_like(z)
    err = np.zeros(z.shape)
    idx = np.arange(z.size)  # points still being summed
    zz = z.copy()
    tot = total.copy()
    comp = np.zeros_like(z)
    term = np.ones_like(z)
    absum = np.ones(z.shape)
    quiet = np.zeros(z.shape, dtype=int)
    m = 0
    used = 1
    while idx.size:
        c = 1.0 + 0j
        for a in num:
            c *= a + m
        for b in den:
            c /= b + m
        c /= m + 1
        term = term * c * zz
        m += 1
        # Kahan-compensated accumulation
        y = term - comp
        t = tot + y
        comp = (t - tot) - y
        tot = t
        at = np.abs(term)
        absum += at
        small = at <= tol_rel * np.abs(tot) + tol_abs
        quiet = np.where(small, quiet + 1, 0)
        done = quiet >= 2
        ndone = np.count_nonzero(done)
        if ndone and (ndone == idx.size or ndone * 8 >= idx.size or m % 256 == 0):
            c_next = 1.0 + 0j
            for a in num:
                c_next *= a + m
            for b in den:
                c_next /= b + m
            c_next /= m + 1
            rho = np.minimum(np.abs(c_next * zz[done]), 0.999)
            i_done = idx[done]
            total[i_done] = tot[done]
            err[i_done] = at[done] * rho / (1 - rho) + 4 * _EPS * absum[done]
            keep = ~done
            idx, zz, tot, comp, term, absum, quiet = (x[keep] for x in (idx, zz, tot, comp, term, absum, quiet))
            used = m + 1
        if idx.size and m >= cap:
            raise BudgetExceeded(f"series not converged after {cap} terms")
    return total.reshape(shape), err.reshape(shape), used


def hyp_pfq(num: Sequence[complex], den: Sequence[complex], z: complex, *,
            tol_rel: float = 1e-16, tol_abs: float = 1e-300, cap: int = TERM_CAP) -> SeriesResult:
    val, err, n = pfq_array(num, den, np.array([complex(z)]), tol_rel=tol_rel, tol_abs=tol_abs, cap=cap)
    return SeriesResult(complex(val[0]), float(err[0]), n)

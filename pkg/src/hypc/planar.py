"""Integrals over the complex plane in log-polar coordinates ``z = exp(u + i theta)``.

Power behaviour at 0 and infinity becomes exponential in ``u``, so uniform panels suffice
there.  Integrable point singularities elsewhere get panels graded geometrically towards
them in both ``u`` and ``theta``.  Optional strips in ``u`` (thin annuli where the
integrand cannot be evaluated) are bridged by a local fit of the radial profile.
:func:`plane_integral_centered` splits the plane by a partition of unity so that every
singular point gets log-polar coordinates of its own.
"""
from __future__ import annotations

import math
from typing import Callable, Iterable, Sequence, Tuple

import numpy as np

_GL_X, _GL_W = np.polynomial.legendre.leggauss(10)


def _gl_nodes(edges):
    edges = np.asarray(edges, float)
    a, b = edges[:-1], edges[1:]
    half = (b - a) / 2
    x = ((a + b) / 2)[:, None] + half[:, None] * _GL_X[None, :]
    w = half[:, None] * _GL_W[None, :]
    return x.ravel(), w.ravel()


def _graded(center: float, lo: float, hi: float, finest: float, ratio: float = 0.5):
    out = []
    d = finest
    while center - d > lo or center + d < hi:
        out += [center - d, center + d]
        d /= ratio
    return [x for x in out if lo < x < hi]


def _wrap(x):
    return (x + np.pi) % (2 * np.pi) - np.pi


def _theta_edges(u: float, sing: Sequence[complex], base: int, finest: float):
    edges = list(np.linspace(-np.pi, np.pi, base + 1))
    for zs in sing:
        us, ts = math.log(abs(zs)), math.atan2(zs.imag, zs.real)
        d = abs(u - us)
        if d > 1.0:
            continue
        for x in _graded(0.0, -np.pi, np.pi, max(d / 2, finest)):
            edges.append(_wrap(ts + x))
        edges.append(_wrap(ts))
    e = np.unique(np.round(np.array(edges), 15))
    return np.concatenate([e[(e > -np.pi) & (e < np.pi)], [np.pi]]) if e[0] > -np.pi else \
        np.concatenate([e[e < np.pi], [np.pi]])


def plane_integral(f: Callable, singular: Iterable[complex] = (), strips: Iterable[Tuple[float, float]] = (),
                   u_range: Tuple[float, float] = (-30.0, 30.0), u_step: float = 1.0,
                   theta_panels: int = 16, finest: float = 1e-7, chunk: int = 200_000,
                   tails: bool = False) -> complex:
    """``int f(z) dRe z dIm z`` over the plane.

    ``f`` takes an array of complex points.  ``strips`` lists ``(u_center, half_width)``
    or ``(u_center, half_width, gamma)`` intervals of ``log|z|`` where ``f`` is never
    called (see :func:`_bridge`).  With ``tails`` the radial profile beyond ``u_range`` is
    extrapolated as an exponential in ``u`` (a power of ``|z|``).
    """
    sing = [complex(s) for s in singular if s != 0]
    strips = list(strips)
    lo, hi = u_range
    edges = list(np.arange(lo, hi, u_step)) + [hi]
    for zs in sing:
        edges += _graded(math.log(abs(zs)), lo, hi, finest)
    for st in strips:
        c, w = st[0], st[1]
        edges += [c - w, c + w] + _graded(c, lo, hi, 2 * w)
    edges = np.unique(np.array(edges))
    keep = []
    for a, b in zip(edges[:-1], edges[1:]):
        m = (a + b) / 2
        if not any(abs(m - st[0]) < st[1] for st in strips):
            keep.append((a, b))

    us, wu = [], []
    for a, b in keep:
        x, w = _gl_nodes([a, b])
        us.append(x)
        wu.append(w)
    us, wu = np.concatenate(us), np.concatenate(wu)
    pts, wts = [], []
    for n, u in enumerate(us):
        th, wt = _gl_nodes(_theta_edges(u, sing, theta_panels, finest))
        pts.append(np.exp(u + 1j * th))
        wts.append(wt * wu[n])
    z = np.concatenate(pts)
    w = np.concatenate(wts) * np.abs(z) ** 2
    total = 0j
    for lo_i in range(0, z.size, chunk):
        sl = slice(lo_i, lo_i + chunk)
        total += np.sum(w[sl] * f(z[sl]))
    for strip in strips:
        total += _bridge(f, strip, sing, theta_panels, finest)
    if tails:
        total += _end_tail(f, lo, -1.0, sing, theta_panels, finest)
        total += _end_tail(f, hi, 1.0, sing, theta_panels, finest)
    return total


def _end_tail(f, u0, direction, sing, theta_panels, finest):
    """``int`` of the profile from ``u0`` to ``direction * inf``, assuming ``P(u) = P(u0) exp(g (u - u0))``."""
    p0 = _profile(f, u0, sing, theta_panels, finest)
    p1 = _profile(f, u0 - direction, sing, theta_panels, finest)
    if p0 == 0 or p1 == 0:
        return 0j
    g = np.log(p0 / p1) * direction
    if (g * direction).real >= 0:
        return 0j
    return -direction * p0 / g


def plane_integral_centered(f: Callable, centers: Sequence[complex], **kw) -> complex:
    """``int f dA`` with every point of ``centers`` treated as a singularity at the origin of its own chart.

    ``f(c, x)`` must return the integrand at ``c + x``; factors that vanish at a centre
    should be formed from ``x`` directly so they keep full relative precision.  Chart ``i``
    carries the weight ``|x|^-2 / sum_j |x - (c_j - c_i)|^-2``.
    """
    centers = [complex(c) for c in centers]
    kw.setdefault("tails", True)
    total = 0j
    for i, c in enumerate(centers):
        offs = [d - c for j, d in enumerate(centers) if j != i]

        def g(x, c=c, offs=offs):
            ax2 = np.abs(x) ** 2
            s = np.ones(x.shape)
            for d in offs:
                s = s + ax2 / np.abs(x - d) ** 2
            return f(c, x) / s
        total += plane_integral(g, singular=offs, **kw)
    return total


def _profile(f, u, sing, theta_panels, finest):
    th, wt = _gl_nodes(_theta_edges(u, sing, theta_panels, finest))
    z = np.exp(u + 1j * th)
    return np.sum(wt * f(z) * np.abs(z) ** 2)


def _bridge(f, strip, sing, theta_panels, finest):
    """Integral of the radial profile across a strip ``(c, w[, gamma])``.

    With ``gamma`` the profile is modelled as ``A + B_pm |x|^gamma + C x + D x^2`` around
    the centre, fitted to values just outside the strip; without it, the trapezoid rule.
    """
    c, w = strip[0], strip[1]
    gamma = strip[2] if len(strip) > 2 else None
    if gamma is None:
        return w * (_profile(f, c - w, sing, theta_panels, finest) + _profile(f, c + w, sing, theta_panels, finest))
    x = np.array([-4, -2, -1, 1, 2, 4]) * w
    y = np.array([_profile(f, c + xi, sing, theta_panels, finest) for xi in x])
    ax = np.abs(x) ** gamma
    basis = np.stack([np.ones(6), ax * (x < 0), ax * (x > 0), x, x ** 2], axis=1).astype(complex)
    coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
    a, bm, bp, _, d = coef
    return 2 * w * a + (bm + bp) * w ** (gamma + 1) / (gamma + 1) + 2 * d * w ** 3 / 3

"""Direct quadrature of the defining integral over Z x (contour), plus Mellin and convolution integrals.

Per ``k`` the contour integral is split into a central part (the imaginary axis over
``[-S, S]`` with detours swapped in) done by adaptive Gauss-Kronrod panels, and two
oscillatory tails summed over half periods of the asymptotic phase and extrapolated
with Wynn's epsilon algorithm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy import integrate

from .errors import (NotAbsolutelyConvergent, NotL2, OscillationTooSlow, ParameterCollision,
                     QuadratureBudgetExceeded)
from .kernel import GParams, classify_convergence, detect_collisions, kernel_array, separating_contour
from .lattice import LambdaPoint, dpow
from .planar import plane_integral
from .residue import EvalResult, g_series_array

# Gauss-Kronrod 7/15 on [-1, 1]
_XK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0])
_WK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714])
_WG = np.array([0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                0.381830050505118944950369775488975, 0.417959183673469387755102040816327])
GK_X = np.concatenate([-_XK[:-1], _XK[::-1]])
GK_WK = np.concatenate([_WK[:-1], _WK[::-1]])
GK_WG = np.zeros(15)
GK_WG[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])

MARGIN_MIN = 0.05
LOG_R_FLOOR = 1e-2


@dataclass
class QuadConfig:
    tol_abs: float = 1e-8
    tol_rel: float = 1e-6
    max_k: int = 200
    line_half_length: Optional[float] = None  # None: chosen from the phase
    nodes_per_unit: int = 15
    detour_nodes: int = 30
    detour_scale: float = 1.0
    half_periods: int = 40
    max_evals: int = 2_000_000

    def __post_init__(self):
        for name in ("tol_abs", "tol_rel", "max_k", "nodes_per_unit", "detour_nodes", "detour_scale",
                     "half_periods", "max_evals"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.line_half_length is not None and self.line_half_length <= 0:
            raise ValueError("line_half_length must be positive")


def gk15(f: Callable, a, b):
    """Kronrod estimates and |K - G| errors for each panel ``[a_i, b_i]`` of a vectorised ``f``."""
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    mid = (a + b) / 2
    half = (b - a) / 2
    t = mid[:, None] + half[:, None] * GK_X[None, :]
    v = f(t)
    k = (v * GK_WK).sum(axis=1) * half
    g = (v * GK_WG).sum(axis=1) * half
    return k, np.abs(k - g)


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, n: int):
        self.used += n
        if self.used > self.limit:
            raise QuadratureBudgetExceeded(f"more than {self.limit} integrand evaluations")


def adaptive_gk(f: Callable, edges, tol: float, budget: _Budget, max_rounds: int = 40):
    """Integrate ``f`` over the union of the panels between consecutive ``edges``."""
    edges = np.asarray(edges, float)
    a, b = edges[:-1], edges[1:]
    done_v = 0j
    done_e = 0.0
    for _ in range(max_rounds):
        budget.spend(15 * a.size)
        v, e = gk15(f, a, b)
        bad = e > tol * (b - a) / max(edges[-1] - edges[0], 1e-300) + 1e-300
        if np.sum(e) + done_e <= tol:
            bad[:] = False
        done_v += v[~bad].sum()
        done_e += e[~bad].sum()
        if not bad.any():
            return done_v, done_e
        m = (a[bad] + b[bad]) / 2
        a, b = np.concatenate([a[bad], m]), np.concatenate([m, b[bad]])
    raise QuadratureBudgetExceeded("adaptive refinement did not settle")


def wynn_epsilon(partial: np.ndarray) -> Tuple[complex, float]:
    """Limit of a sequence of partial sums by Wynn's epsilon algorithm, with an error estimate."""
    s = list(np.asarray(partial, complex))
    n = len(s)
    if n < 3:
        return s[-1], abs(s[-1] - s[0]) if n > 1 else 0.0
    prev = [0j] * (n + 1)
    cur = s[:]
    best = [s[-1]]
    for col in range(1, n):
        nxt = []
        for i in range(len(cur) - 1):
            d = cur[i + 1] - cur[i]
            nxt.append(prev[i + 1] + (1 / d if d != 0 else 1e300))
        prev, cur = cur, nxt
        if col % 2 == 0 and cur:
            best.append(cur[-1])
        if len(cur) < 2:
            break
    est = best[-1]
    err = abs(best[-1] - best[-2]) if len(best) > 1 else abs(s[-1] - s[-2])
    return est, err


def _phase_rate(params: GParams, k: int, s, logr: float):
    xi = np.abs(k + 1j * np.asarray(s, float)) / 2
    return (params.q - params.p) * np.log(np.maximum(xi, 1e-300)) - logr


def _tail_start(params: GParams, k: int, logr: float, s_min: float) -> float:
    s = s_min
    sgn = np.sign(params.q - params.p)
    for _ in range(200):
        w = float(_phase_rate(params, k, s, logr))
        if sgn == 0 or (np.sign(w) == sgn and abs(w) >= 1.0):
            return s
        s *= 1.5
    raise OscillationTooSlow("could not find a region where the phase oscillates")


def _ray_tail(nu: complex, lam: float, S: float) -> complex:
    """``int_S^inf s^-nu exp(-i lam s) ds``, along a ray into the half plane where the exponential decays."""
    if lam == 0:
        return S ** (1 - nu) / (nu - 1)
    sg = 1.0 if lam > 0 else -1.0
    f = lambda t: (S - 1j * sg * t) ** (-nu) * math.exp(-abs(lam) * t)
    v, _ = integrate.quad(f, 0, np.inf, complex_func=True, limit=400, epsabs=1e-16, epsrel=1e-13)
    return -1j * sg * np.exp(-1j * lam * S) * v


def _power_tail(params: GParams, f: Callable, lam: float, S: float, nfit: int = 6):
    """Tail ``int_S^inf f`` for p = q, where ``f(s) exp(i lam s)`` has an expansion in powers of ``1/s``.

    Returns ``(value, err)``; the error compares fits with ``nfit`` and ``nfit - 1`` terms.
    """
    nu = params.p + params.q - sum(complex(x.sigma) for x in params.a_list + params.b_list)
    x = np.cos(np.pi * (np.arange(4 * nfit) + 0.5) / (4 * nfit))
    inv = (1 + x) / (2 * S)  # 1/s in (0, 1/S]
    inv = inv[inv > 1 / (8 * S)]
    s = 1 / inv
    amp = f(s) * np.exp(1j * lam * s)
    vals = []
    for n in (nfit - 1, nfit):
        basis = s[:, None] ** (-nu - np.arange(n)[None, :])
        c, *_ = np.linalg.lstsq(basis, amp, rcond=None)
        vals.append(sum(c[j] * _ray_tail(nu + j, lam, S) for j in range(n)))
    return vals[1], abs(vals[1] - vals[0])


def _check_quad_domain(params: GParams, z: complex) -> None:
    if z == 0:
        raise ValueError("z must be nonzero")
    info = classify_convergence(params)
    if info.margin < MARGIN_MIN:
        raise NotAbsolutelyConvergent(
            f"need upsilon <= p + q - 1 - {MARGIN_MIN}; got upsilon = {info.upsilon}")
    cols = detect_collisions(params)
    if cols:
        raise ParameterCollision(f"left and right poles collide: {cols}")


def _piece_integrand(params, k, z, kind, data):
    """Integrand in the piece's own parameter ``t``: ``(1/2 pi i) K z^(-k,-sigma) d sigma/dt``."""
    logr, theta = math.log(abs(z)), np.angle(z)
    pre = np.exp(-1j * k * theta) / (2j * np.pi)
    if kind == "line":
        s0, s1 = data

        def f(t):
            sig = s0 + (s1 - s0) * t
            return pre * kernel_array(params, k, sig) * np.exp(-sig * logr) * (s1 - s0)
        return f
    c, rho, t0, t1 = data

    def g(t):
        ph = t0 + (t1 - t0) * t
        e = np.exp(1j * ph)
        sig = c + rho * e
        return pre * kernel_array(params, k, sig) * np.exp(-sig * logr) * 1j * rho * e * (t1 - t0)
    return g


def _axis_integrand(params, k, z):
    logr, theta = math.log(abs(z)), np.angle(z)
    pre = np.exp(-1j * k * theta) / (2 * np.pi)

    def f(s):
        return pre * kernel_array(params, k, 1j * s) * np.exp(-1j * s * logr)
    return f


def _integrate_k(params: GParams, z: complex, k: int, cfg: QuadConfig, tol: float, budget: _Budget):
    contour = separating_contour(params, k, cfg.detour_scale)
    logr = math.log(abs(z))
    s_min = max(30.0, 2 * contour.extent + 2, 3.0 * abs(k))
    if cfg.line_half_length:
        S = cfg.line_half_length
    elif params.p == params.q:
        S = max(s_min, 8.0 * abs(k))
    else:
        S = _tail_start(params, k, logr, s_min)
    h = 15.0 / cfg.nodes_per_unit
    axis = _axis_integrand(params, k, z)
    # central part: axis segments between detours
    total = 0j
    err = 0.0
    cuts = [-S]
    for d in contour.detours:
        cuts += [d.y_lo, d.y_hi]
    cuts.append(S)
    for lo, hi in zip(cuts[::2], cuts[1::2]):
        if hi <= lo:
            continue
        n = max(1, math.ceil((hi - lo) / h))
        v, e = adaptive_gk(axis, np.linspace(lo, hi, n + 1), tol / 4, budget)
        total += v
        err += e
    npan = max(1, math.ceil(cfg.detour_nodes / 15))
    for d in contour.detours:
        for piece in d.pieces():
            f = _piece_integrand(params, k, z, piece[0], piece[1:])
            v, e = adaptive_gk(f, np.linspace(0, 1, npan + 1), tol / 8, budget)
            total += v
            err += e
    if cfg.line_half_length is not None:
        return total, err, S
    if params.p == params.q:
        err_t = 0.0
        for sgn in (1, -1):
            v, e = _power_tail(params, (lambda s: axis(sgn * s)), sgn * logr, S)
            total += v
            err_t += e
        if err_t > max(tol, 1e-3 * abs(total)):
            raise OscillationTooSlow(f"power-law tail fit is unreliable (spread {err_t:.2e})")
        return total, err + err_t, S
    # tails, by half periods of the asymptotic phase
    pts = [S]
    for _ in range(cfg.half_periods):
        w = abs(float(_phase_rate(params, k, pts[-1], logr)))
        pts.append(pts[-1] + math.pi / w)
    pts = np.array(pts)
    sub = 2
    fine = np.concatenate([np.linspace(pts[i], pts[i + 1], sub + 1)[:-1] for i in range(len(pts) - 1)]
                          + [pts[-1:]])
    for sgn in (1, -1):
        budget.spend(15 * (fine.size - 1))
        if sgn > 0:
            v, e = gk15(axis, fine[:-1], fine[1:])
        else:
            v, e = gk15(lambda s: axis(-s), fine[:-1], fine[1:])
        halves = v.reshape(-1, sub).sum(axis=1)
        est, eerr = wynn_epsilon(np.cumsum(halves))
        total += est
        err += eerr + e.sum()
    return total, err, S


def g_eval_quad(params: GParams, z: complex, cfg: Optional[QuadConfig] = None) -> EvalResult:
    """``pGq(z)`` by quadrature of the defining integral, summed over ``k``."""
    cfg = cfg or QuadConfig()
    z = complex(z)
    _check_quad_domain(params, z)
    budget = _Budget(cfg.max_evals)
    total = 0j
    err = 0.0
    quiet = 0
    mags: List[float] = []
    partial: List[complex] = []
    accel = None
    for kk in range(cfg.max_k + 1):
        scale = max(cfg.tol_abs, cfg.tol_rel * abs(total))
        ks = (0,) if kk == 0 else (kk, -kk)
        m = 0.0
        for k in ks:
            v, e, _ = _integrate_k(params, z, k, cfg, scale / 10, budget)
            total += v
            err += e
            m = max(m, abs(v))
        mags.append(m)
        partial.append(total)
        quiet = quiet + 1 if m < scale / 10 else 0
        if quiet >= 3 and kk >= 2:
            break
        if kk >= 12 and kk % 4 == 0:
            # slowly decaying (typically alternating) k-sums: extrapolate the partial sums
            est, e_est = wynn_epsilon(np.array(partial[-min(len(partial), 41):]))
            if accel is not None and e_est < scale and abs(est - accel) < scale:
                return EvalResult(complex(est), err + e_est + abs(est - accel), "Quadrature",
                                  {"k_range": [-kk, kk], "truncation_estimate": e_est + abs(est - accel),
                                   "quadrature_error": err, "evaluations": budget.used,
                                   "k_sum": "epsilon"})
            accel = est
    else:
        raise QuadratureBudgetExceeded(f"k-sum not converged at |k| = {cfg.max_k}")
    ratios = [mags[i + 1] / mags[i] for i in range(len(mags) - 4, len(mags) - 1) if mags[i] > 0]
    rho = min(max(ratios, default=0.5), 0.9)
    trunc = 2 * mags[-1] * rho / (1 - rho)
    return EvalResult(complex(total), err + trunc, "Quadrature",
                      {"k_range": [-kk, kk], "truncation_estimate": trunc,
                       "quadrature_error": err, "evaluations": budget.used, "k_sum": "direct"})


def mellin_forward(f: Callable, point: LambdaPoint, cfg: Optional[QuadConfig] = None, *,
                   r_min: float = 1e-12, r_max: float = 1e12, singular=(), strips=()) -> complex:
    """``(1/2 pi) int t^(k, sigma) f(t) dA / |t|^2`` over the annulus ``r_min < |t| < r_max``."""
    cfg = cfg or QuadConfig()
    k, sig = point.k, point.sigma
    panels = max(16, math.ceil(8 * (abs(k) + 4) / 10))

    def g(t):
        return dpow(t, k, sig) * f(t) / np.abs(t) ** 2

    val = plane_integral(g, singular, strips, (math.log(r_min), math.log(r_max)), theta_panels=panels)
    if not np.isfinite(val):
        raise QuadratureBudgetExceeded("Mellin integral did not produce a finite value")
    return complex(val) / (2 * np.pi)


STRIP_HALF_WIDTH = 4e-3


def _cusp_order(params: GParams) -> complex:
    ups = sum(complex(x.sigma) for x in params.a_list + params.b_list)
    return 2 * params.p - 1 - ups


def convolve_g(params1: GParams, params2: GParams, t: complex, cfg: Optional[QuadConfig] = None, *,
               u_range: Tuple[float, float] = (-30.0, 30.0)) -> complex:
    """``(1/2 pi) int g1(z) g2(t/z) dA / |z|^2`` with both factors evaluated from the pole sums.

    For p = q the pole sums cannot be evaluated next to the unit circle.  There G has a
    point singularity like ``|1 - w|^(2p - 2 - upsilon)``, so the radial profile has a cusp
    of order ``2p - 1 - upsilon`` at the circle; the thin annulus is bridged with that model.
    """
    t = complex(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    for P in (params1, params2):
        if not P.upsilon < P.p + P.q - 1:
            raise NotL2(f"{P} is not square integrable: upsilon = {P.upsilon} >= p + q - 1")
    sing, strips = [], []
    if params1.p == params1.q:
        sing.append((-1) ** params1.q + 0j)
        strips.append((0.0, STRIP_HALF_WIDTH, _cusp_order(params1)))
    if params2.p == params2.q:
        sing.append(t * (-1) ** params2.q)
        strips.append((math.log(abs(t)), STRIP_HALF_WIDTH, _cusp_order(params2)))

    def f(z):
        v1, _ = g_series_array(params1, z)
        v2, _ = g_series_array(params2, t / z)
        return v1 * v2 / np.abs(z) ** 2

    return complex(plane_integral(f, sing, strips, u_range)) / (2 * np.pi)

"""The Barnes-Ismagilov integrand, its poles, convergence classes and separating contours.

Indexing convention: ``pGq`` has ``q`` upper parameters ``(a|a')`` and ``p`` lower
parameters ``(b|b')``.  The integrand at the lattice point ``(k, sigma)`` is

    prod_alpha gamma_c(a_alpha + (k, sigma)) * prod_beta gamma_c(b_beta + (-k, -sigma)).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Sequence, Tuple

import numpy as np

from .errors import ParameterCollision, PoleAtPoint
from .gamma import POLE_TOL, gamma_c_array
from .lattice import LambdaList, LambdaPoint

COLLISION_TOL = 1e-9
DETOUR_CAP = 0.25


@dataclass(frozen=True)
class GParams:
    a_list: LambdaList
    b_list: LambdaList = field(default_factory=LambdaList)

    def __post_init__(self):
        object.__setattr__(self, "a_list", LambdaList(self.a_list))
        object.__setattr__(self, "b_list", LambdaList(self.b_list))

    @property
    def p(self) -> int:
        return len(self.b_list)

    @property
    def q(self) -> int:
        return len(self.a_list)

    @cached_property
    def upsilon(self) -> float:
        return float(sum(x.sigma.real for x in self.a_list) + sum(x.sigma.real for x in self.b_list))

    def swapped(self) -> "GParams":
        return GParams(self.b_list, self.a_list)

    def to_dict(self) -> dict:
        return {"a": self.a_list.to_text(), "b": self.b_list.to_text()}

    @classmethod
    def from_text(cls, a: str, b: str = "") -> "GParams":
        return cls(LambdaList.from_text(a), LambdaList.from_text(b))

    def __repr__(self) -> str:
        return f"GParams(a=[{self.a_list.to_text()}], b=[{self.b_list.to_text()}])"


class Convergence(enum.Enum):
    DIVERGENT = "Divergent"
    CONDITIONAL = "Conditional"
    ABSOLUTE = "Absolute"


@dataclass(frozen=True)
class ConvergenceInfo:
    kind: Convergence
    positive_parameters: bool  # every Re(a+a') > 0 and Re(b+b') > 0
    upsilon: float
    margin: float  # p + q - 1 - upsilon; absolute convergence iff > 0


def classify_convergence(params: GParams) -> ConvergenceInfo:
    n = params.p + params.q
    u = params.upsilon
    if u < n - 1:
        kind = Convergence.ABSOLUTE
    elif u < n:
        kind = Convergence.CONDITIONAL
    else:
        kind = Convergence.DIVERGENT
    pos = all(x.sigma.real > 0 for x in params.a_list) and all(x.sigma.real > 0 for x in params.b_list)
    return ConvergenceInfo(kind, pos, u, n - 1 - u)


def kernel_array(params: GParams, k, sigma):
    """Vectorised integrand; ``inf`` at poles."""
    k = np.asarray(k)
    sigma = np.asarray(sigma, dtype=complex)
    out = np.ones(np.broadcast(k, sigma).shape, dtype=complex)
    with np.errstate(invalid="ignore", over="ignore"):
        for x in params.a_list:
            out = out * gamma_c_array(x.k + k, x.sigma + sigma)
        for x in params.b_list:
            out = out * gamma_c_array(x.k - k, x.sigma - sigma)
    return out


def kernel_eval(params: GParams, point: LambdaPoint) -> complex:
    for pole in _factor_poles_at(params, point):
        raise PoleAtPoint(f"integrand has a pole at {point} ({pole})")
    return complex(kernel_array(params, point.k, point.sigma))


def _is_pole_point(p: LambdaPoint) -> bool:
    a, ap = p.a, p.a_prime
    ma, mb = round(a.real), round(ap.real)
    return ma <= 0 and mb <= 0 and abs(a - ma) <= POLE_TOL and abs(ap - mb) <= POLE_TOL


def _factor_poles_at(params, point):
    for i, x in enumerate(params.a_list):
        if _is_pole_point(x + point):
            yield f"a-factor {i + 1}"
    for i, x in enumerate(params.b_list):
        if _is_pole_point(x - point):
            yield f"b-factor {i + 1}"


class Side(enum.Enum):
    LEFT = "Left"
    RIGHT = "Right"


@dataclass(frozen=True)
class PolePoint:
    k: int
    sigma: complex
    side: Side
    origin: Tuple[int, int, int]  # (parameter index from 1, m, m')


def _poles_of(points: Sequence[LambdaPoint], k: int, window: float, side: Side) -> List[PolePoint]:
    if window <= 0:
        raise ValueError("sigma_window must be positive")
    out = []
    sgn = -1 if side is Side.LEFT else 1
    for idx, x in enumerate(points, start=1):
        # left: m' - m = k + k_a, sigma = -(m + m') - sigma_a
        # right: m - m' = k - k_b, sigma = (m + m') + sigma_b
        d = k + x.k if side is Side.LEFT else k - x.k
        n = abs(d)
        while True:
            s = sgn * (n + x.sigma)
            if abs(s) <= window:
                if side is Side.LEFT:
                    m, mp = (n - d) // 2, (n + d) // 2
                else:
                    m, mp = (n + d) // 2, (n - d) // 2
                out.append(PolePoint(k, s, side, (idx, m, mp)))
            elif n > window + abs(x.sigma):
                break
            n += 2
    return out


def left_poles(params: GParams, k: int, sigma_window: float) -> List[PolePoint]:
    return _poles_of(params.a_list, k, sigma_window, Side.LEFT)


def right_poles(params: GParams, k: int, sigma_window: float) -> List[PolePoint]:
    return _poles_of(params.b_list, k, sigma_window, Side.RIGHT)


def _near_nonneg_int(x: complex) -> int | None:
    n = round(x.real)
    if n >= 0 and abs(x - n) <= COLLISION_TOL:
        return n
    return None


def detect_collisions(params: GParams) -> List[Tuple[int, int, int, int]]:
    out = []
    for i, x in enumerate(params.a_list, start=1):
        for j, y in enumerate(params.b_list, start=1):
            m = _near_nonneg_int(x.a + y.a)
            mp = _near_nonneg_int(x.a_prime + y.a_prime)
            if m is not None and mp is not None:
                out.append((i, j, m, mp))
    return out


@dataclass(frozen=True)
class Detour:
    """Excursion off the imaginary axis over ``y_lo <= Im sigma <= y_hi``.

    ``side = +1`` bulges into Re sigma > 0 (misplaced left poles stay on its left),
    ``side = -1`` bulges into Re sigma < 0.  The path leaves the axis at ``i*y_lo``,
    runs horizontally to ``side*x + i*y_lo``, follows a half circle of radius ``rho``
    centred at ``side*x + i*(y_lo+y_hi)/2`` when ``y_hi - y_lo == 2*rho`` (a rectangle
    edge otherwise) and returns to ``i*y_hi``.
    """
    y_lo: float
    y_hi: float
    x: float
    rho: float
    side: int
    poles: Tuple[PolePoint, ...]

    @property
    def round_end(self) -> bool:
        return math.isclose(self.y_hi - self.y_lo, 2 * self.rho, rel_tol=1e-12, abs_tol=1e-14)

    def pieces(self):
        """Path pieces in order of increasing Im sigma: ``('line', s0, s1)`` or ``('arc', c, rho, t0, t1)``."""
        s = self.side
        lo, hi = 1j * self.y_lo, 1j * self.y_hi
        if self.round_end:
            c = s * self.x + (lo + hi) / 2
            t1 = math.pi / 2 if s > 0 else -3 * math.pi / 2
            out = [("line", lo, s * self.x + lo), ("arc", c, self.rho, -math.pi / 2, t1),
                   ("line", s * self.x + hi, hi)]
        else:
            xr = s * (self.x + self.rho)
            out = [("line", lo, xr + lo), ("line", xr + lo, xr + hi), ("line", xr + hi, hi)]
        return [p for p in out if p[0] == "arc" or abs(p[2] - p[1]) > 0]

    def contains(self, sigma: complex) -> bool:
        """True if ``sigma`` lies in the region between this detour and the axis."""
        re = self.side * sigma.real
        im = sigma.imag
        if not (self.y_lo < im < self.y_hi) or re <= 0:
            return False
        if self.round_end:
            c = complex(self.x, (self.y_lo + self.y_hi) / 2)
            return re <= self.x or abs(complex(re, im) - c) < self.rho
        return re < self.x + self.rho


@dataclass(frozen=True)
class ContourSpec:
    k: int
    detours: Tuple[Detour, ...] = ()

    @property
    def is_axis(self) -> bool:
        return not self.detours

    @property
    def extent(self) -> float:
        """Half-height of the region in which the path leaves the axis."""
        if not self.detours:
            return 0.0
        return max(max(abs(d.y_lo), abs(d.y_hi)) for d in self.detours)


def separating_contour(params: GParams, k: int, radius_scale: float = 1.0) -> ContourSpec:
    """Imaginary axis with detours around poles that sit on the wrong side of it.

    ``radius_scale`` shrinks every detour radius (used to check contour independence).
    """
    cols = detect_collisions(params)
    if cols:
        raise ParameterCollision(f"left and right poles collide: {cols}")
    info = classify_convergence(params)
    if info.positive_parameters:
        return ContourSpec(k)
    window = 4 + max([abs(x.sigma) for x in params.a_list + params.b_list] or [0])
    lefts = left_poles(params, k, window)
    rights = right_poles(params, k, window)
    allp = lefts + rights
    bad_l = [p for p in lefts if p.sigma.real >= 0]
    bad_r = [p for p in rights if p.sigma.real <= 0]
    detours = []
    for side, bad in ((1, bad_l), (-1, bad_r)):
        if not bad:
            continue
        # group by height
        bad = sorted(bad, key=lambda p: p.sigma.imag)
        groups: list[list[PolePoint]] = []
        for p in bad:
            if groups and abs(p.sigma.imag - groups[-1][-1].sigma.imag) < 2 * DETOUR_CAP:
                groups[-1].append(p)
            else:
                groups.append([p])
        for g in groups:
            gap = math.inf
            for p in g:
                for o in allp:
                    if o.sigma == p.sigma and o.side == p.side:
                        continue
                    if any(o.sigma == gp.sigma and o.side == gp.side for gp in g):
                        continue
                    gap = min(gap, abs(o.sigma - p.sigma))
            rho = min(DETOUR_CAP, gap / 2) * radius_scale
            if rho <= 0:
                raise ParameterCollision("poles on the axis coincide")
            x = max(side * p.sigma.real for p in g)
            y_lo = min(p.sigma.imag for p in g) - rho
            y_hi = max(p.sigma.imag for p in g) + rho
            detours.append(Detour(y_lo, y_hi, x, rho, side, tuple(g)))
    detours.sort(key=lambda d: d.y_lo)
    for d1, d2 in zip(detours, detours[1:]):
        if d2.y_lo <= d1.y_hi:
            raise ParameterCollision("detours overlap; cannot separate left and right poles")
    for d in detours:
        wrong = rights if d.side > 0 else lefts
        for o in wrong:
            if d.contains(o.sigma) or abs(o.sigma - (d.side * d.x + 1j * o.sigma.imag)) < 1e-12:
                raise ParameterCollision(f"pole {o.sigma} trapped by detour around {d.poles[0].sigma}")
    return ContourSpec(k, tuple(detours))

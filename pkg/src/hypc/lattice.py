"""Points of the lattice ``a|a'`` (``a - a'`` integer) and the double powers ``z^{a|a'}``.

A point is stored as ``(k, sigma)`` with ``k = a - a'`` and ``sigma = a + a'``.
Every power of a complex number in the package goes through :func:`dpow`, so
there is exactly one branch convention: ``arg z`` in ``(-pi, pi]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import NotOnLattice, ZeroBase

LATTICE_TOL = 1e-9


@dataclass(frozen=True)
class LambdaPoint:
    k: int
    sigma: complex

    def __post_init__(self):
        if isinstance(self.k, float) and not float(self.k).is_integer():
            raise NotOnLattice(f"k must be an integer, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "sigma", complex(self.sigma))

    @property
    def a(self) -> complex:
        return (self.k + self.sigma) / 2

    @property
    def a_prime(self) -> complex:
        return (-self.k + self.sigma) / 2

    def __add__(self, other: "LambdaPoint") -> "LambdaPoint":
        return LambdaPoint(self.k + other.k, self.sigma + other.sigma)

    def __sub__(self, other: "LambdaPoint") -> "LambdaPoint":
        return LambdaPoint(self.k - other.k, self.sigma - other.sigma)

    def __neg__(self) -> "LambdaPoint":
        return LambdaPoint(-self.k, -self.sigma)

    def scaled(self, m: int) -> "LambdaPoint":
        """``m*a | m*a'`` for an integer m."""
        return LambdaPoint(m * self.k, m * self.sigma)

    def shifted(self, da: complex, da_prime: complex) -> "LambdaPoint":
        """``a+da | a'+da'``; the shift itself must be a lattice point."""
        return self + lambda_from_ab(da, da_prime)

    def complement(self) -> "LambdaPoint":
        """``1-a | 1-a'``."""
        return LambdaPoint(-self.k, 2 - self.sigma)

    def to_text(self) -> str:
        return f"{self.k}:{_fmt(self.sigma.real)}:{_fmt(self.sigma.imag)}"

    @classmethod
    def from_text(cls, text: str) -> "LambdaPoint":
        parts = text.strip().split(":")
        if len(parts) != 3:
            raise ValueError(f"expected 'k:sre:sim', got {text!r}")
        k = int(parts[0])
        return cls(k, complex(float(parts[1]), float(parts[2])))

    def __repr__(self) -> str:
        return f"LambdaPoint(k={self.k}, sigma={self.sigma})"


def _fmt(x: float) -> str:
    return repr(float(x))


def lambda_from_ab(a: complex, a_prime: complex) -> LambdaPoint:
    d = complex(a) - complex(a_prime)
    k = round(d.real)
    if abs(d - k) > LATTICE_TOL:
        raise NotOnLattice(f"a - a' = {d} is not an integer")
    return LambdaPoint(k, complex(a) + complex(a_prime))


ZERO = LambdaPoint(0, 0)
ONE = LambdaPoint(0, 2)  # 1|1


class LambdaList(tuple):
    """Ordered list of lattice points with the ``(a)+h`` and ``(a)_{\\j}`` operations."""

    def __new__(cls, points: Iterable[LambdaPoint] = ()):
        pts = tuple(points)
        for p in pts:
            if not isinstance(p, LambdaPoint):
                raise TypeError(f"expected LambdaPoint, got {type(p).__name__}")
        return super().__new__(cls, pts)

    def plus(self, h: LambdaPoint) -> "LambdaList":
        return LambdaList(p + h for p in self)

    def minus(self, h: LambdaPoint) -> "LambdaList":
        return LambdaList(p - h for p in self)

    def without(self, j: int) -> "LambdaList":
        return LambdaList(p for i, p in enumerate(self) if i != j)

    def replace(self, j: int, p: LambdaPoint) -> "LambdaList":
        return LambdaList(p if i == j else q for i, q in enumerate(self))

    def __add__(self, other) -> "LambdaList":
        return LambdaList(tuple(self) + tuple(other))

    @classmethod
    def from_text(cls, text: str) -> "LambdaList":
        text = text.strip()
        if not text:
            return cls()
        return cls(LambdaPoint.from_text(tok) for tok in text.split(";") if tok.strip())

    def to_text(self) -> str:
        return ";".join(p.to_text() for p in self)


def principal_arg(z):
    """``arg z`` in ``(-pi, pi]`` (``-pi`` from a negative zero is folded to ``pi``)."""
    th = np.angle(z)
    return np.where(th <= -math.pi, math.pi, th)


def dpow(z, k, sigma):
    """Array version of :func:`double_power`: ``exp(i k arg z) |z|^sigma``."""
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise ZeroBase("double power of zero")
    th = principal_arg(z)
    return np.exp(1j * np.asarray(k) * th + np.asarray(sigma, dtype=complex) * np.log(np.abs(z)))


def double_power(z: complex, p: LambdaPoint) -> complex:
    if z == 0:
        raise ZeroBase("double power of zero")
    return complex(dpow(z, p.k, p.sigma))


def neg_one_power(p: LambdaPoint) -> int:
    return -1 if p.k % 2 else 1


def sum_k(points: Sequence[LambdaPoint]) -> int:
    return sum(p.k for p in points)

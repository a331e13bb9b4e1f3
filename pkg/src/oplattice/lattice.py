"""Lattices x(s) and the divided-difference operators they induce.

Two families are supported::

    QLinear:    x(s) = c1 q^{-s} + c2 q^{s} + c3,   q = r**2, r rational
    Quadratic:  x(s) = c4 s^2 + c5 s + c6

``q`` enters only through ``r = sqrt(q)`` so that every quantity below is
rational. Both satisfy ``x(s+1/2) + x(s-1/2) = 2*alpha*x(s) + 2*beta``.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from typing import Union

from .algebra import Polynomial, interpolate, to_scalar
from .errors import DegenerateSampling, InvalidParameters, NonHalfIntegerArgument

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class QLinear:
    r: Fraction
    c1: Fraction
    c2: Fraction
    c3: Fraction = Fraction(0)

    kind = "qlinear"

    def __post_init__(self):
        for name in ("r", "c1", "c2", "c3"):
            object.__setattr__(self, name, to_scalar(getattr(self, name)))
        if self.r <= 0 or self.r == 1:
            raise InvalidParameters("q-lattice needs r = q^(1/2) > 0 and r != 1")
        if self.c1 == 0 and self.c2 == 0:
            raise InvalidParameters("q-lattice needs (c1, c2) != (0, 0)")

    @property
    def q(self) -> Fraction:
        return self.r * self.r

    def x(self, s) -> Fraction:
        two_s = 2 * to_scalar(s)
        if two_s.denominator != 1:
            raise NonHalfIntegerArgument(f"q-lattice evaluated at s = {s}")
        k = two_s.numerator
        return self.c1 * self.r ** (-k) + self.c2 * self.r**k + self.c3

    @property
    def alpha(self) -> Fraction:
        return (self.r + 1 / self.r) / 2

    @property
    def beta(self) -> Fraction:
        return (1 - self.alpha) * self.c3

    def alpha_n(self, n: int) -> Fraction:
        return (self.r**n + self.r ** (-n)) / 2

    def gamma_n(self, n: int) -> Fraction:
        return (self.r**n - self.r ** (-n)) / (self.r - 1 / self.r)

    def params(self) -> dict:
        return {"r": self.r, "c1": self.c1, "c2": self.c2, "c3": self.c3}

    def _sample_points(self) -> Iterator[Fraction]:
        return (Fraction(s) for s in count())


@dataclass(frozen=True)
class Quadratic:
    c4: Fraction
    c5: Fraction
    c6: Fraction

    kind = "quadratic"

    def __post_init__(self):
        for name in ("c4", "c5", "c6"):
            object.__setattr__(self, name, to_scalar(getattr(self, name)))
        if self.c4 == 0 and self.c5 == 0 and self.c6 == 0:
            raise InvalidParameters("quadratic lattice needs (c4, c5, c6) != (0, 0, 0)")

    @property
    def is_constant(self) -> bool:
        """x(s) = c6: the continuous case, where D is d/dz and S the identity."""
        return self.c4 == 0 and self.c5 == 0

    def x(self, s) -> Fraction:
        s = to_scalar(s)
        return self.c4 * s * s + self.c5 * s + self.c6

    @property
    def alpha(self) -> Fraction:
        return Fraction(1)

    @property
    def beta(self) -> Fraction:
        return self.c4 / 4

    def alpha_n(self, n: int) -> Fraction:
        return Fraction(1)

    def gamma_n(self, n: int) -> Fraction:
        return Fraction(n)

    def params(self) -> dict:
        return {"c4": self.c4, "c5": self.c5, "c6": self.c6}

    def _sample_points(self) -> Iterator[Fraction]:
        yield Fraction(0)
        for s in count(1):
            yield Fraction(s)
            yield Fraction(-s)


Lattice = Union[QLinear, Quadratic]


def x_eval(lat: Lattice, s) -> Fraction:
    return lat.x(s)


def alpha_beta(lat: Lattice) -> tuple[Fraction, Fraction]:
    return lat.alpha, lat.beta


def _samples(lat: Lattice, p: Polynomial, need: int, op: str) -> list[tuple[Fraction, Fraction]]:
    pts: list[tuple[Fraction, Fraction]] = []
    seen: set[Fraction] = set()
    budget = 8 * need + 32
    for s in lat._sample_points():
        if len(pts) == need:
            return pts
        budget -= 1
        if budget < 0:
            break
        xs, xp, xm = lat.x(s), lat.x(s + HALF), lat.x(s - HALF)
        if xs in seen or xp == xm:
            continue
        if op == "D":
            val = (p(xp) - p(xm)) / (xp - xm)
        else:
            val = (p(xp) + p(xm)) / 2
        seen.add(xs)
        pts.append((xs, val))
    raise DegenerateSampling(f"could not find {need} distinct abscissae on {lat}")


def d_op(lat: Lattice, p: Polynomial) -> Polynomial:
    """The x-derivative: divided difference of p over the half-step shifts of x(s)."""
    if p.degree < 1:
        return Polynomial()
    if isinstance(lat, Quadratic) and lat.is_constant:
        return p.derivative()
    return interpolate(_samples(lat, p, int(p.degree) + 1, "D"))


def s_op(lat: Lattice, p: Polynomial) -> Polynomial:
    """The x-average of p over the half-step shifts of x(s)."""
    if p.degree < 1:
        return p
    if isinstance(lat, Quadratic) and lat.is_constant:
        return p
    return interpolate(_samples(lat, p, int(p.degree) + 1, "S"))

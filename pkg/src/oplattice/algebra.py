"""Exact rational substrate: scalars, dense polynomials, interpolation, nullspaces.

Scalars are :class:`fractions.Fraction` throughout; nothing in here touches
floating point.
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Sequence
from fractions import Fraction
from functools import reduce
from typing import Union

from .errors import DuplicateAbscissa

Scalar = Fraction
Matrix = list[list[Fraction]]

# Degree of the zero polynomial. Compares below every integer and absorbs
# integer shifts, so ``deg(p) - 1`` stays meaningful.
NEG_INF = -math.inf

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def to_scalar(value: Union[int, Fraction, str]) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, Fractions and strings of the form ``"p"`` or ``"p/q"``.
    Floats and bools are rejected, since they would smuggle in rounding.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rational literals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if not m:
            raise ValueError(f"not a rational literal: {value!r}")
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(int(m.group(1)), den)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_scalar(value: Fraction) -> str:
    """``"p"`` or ``"p/q"``, the inverse of :func:`to_scalar`."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Polynomial:
    """Immutable dense polynomial in one variable, ``coeffs[k]`` multiplying ``z**k``.

    Trailing zeros are stripped on construction, so equal polynomials have
    equal coefficient tuples.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, Fraction) else to_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> Polynomial:
        return cls([0] * k + [c])

    @classmethod
    def identity(cls) -> Polynomial:
        return cls([0, 1])

    @property
    def degree(self) -> Union[int, float]:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        # Horner; works for any ring element that mixes with Fractions.
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Polynomial(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = format_scalar(c)
            terms.append(cs if k == 0 else f"{cs}*z" if k == 1 else f"{cs}*z^{k}")
        return f"Polynomial({' + '.join(terms)})"

    @staticmethod
    def _lift(other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial([other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Polynomial(self[k] + o[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(c * other for c in self.coeffs)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("polynomial divided by zero")
            return Polynomial(c / other for c in self.coeffs)
        return NotImplemented

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> Polynomial:
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def deflate(self, root) -> Polynomial:
        """Quotient of ``self`` by ``(z - root)``; ``root`` must be a root."""
        root = to_scalar(root)
        if not self.coeffs:
            return self
        out = []
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        if out.pop() != 0:
            raise ValueError(f"{format_scalar(root)} is not a root")
        return Polynomial(reversed(out))


def poly_eval(p: Polynomial, z) -> Fraction:
    return p(to_scalar(z))


def interpolate(points: Sequence[tuple]) -> Polynomial:
    """The unique polynomial of degree < len(points) through ``points``.

    Newton divided differences, then expansion of the Newton form.
    """
    xs = [to_scalar(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise DuplicateAbscissa("interpolation abscissae must be pairwise distinct")
    coef = [to_scalar(y) for _, y in points]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = Polynomial()
    for i in range(n - 1, -1, -1):
        out = out * Polynomial([-xs[i], 1]) + coef[i]
    return out


class RationalFunction:
    """Quotient of two polynomials, kept unreduced.

    Only used to evaluate recurrence formulas at points where the literal
    substitution produces 0/0: :meth:`value_at` cancels common linear
    factors at the evaluation point before dividing.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        den = Polynomial([1]) if den is None else den
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def variable(cls) -> RationalFunction:
        return cls(Polynomial.identity())

    @staticmethod
    def _lift(other) -> RationalFunction | None:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction(Polynomial([other]))
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int) -> RationalFunction:
        base = self if k >= 0 else RationalFunction(Polynomial([1])) / self
        out = RationalFunction(Polynomial([1]))
        for _ in range(abs(k)):
            out = out * base
        return out

    def value_at(self, x0) -> Fraction:
        """Value at ``x0`` after removing common zeros of numerator and denominator.

        Raises ZeroDivisionError if ``x0`` is a genuine pole.
        """
        x0 = to_scalar(x0)
        num, den = self.num, self.den
        while den(x0) == 0:
            if num(x0) != 0:
                raise ZeroDivisionError(f"pole at {format_scalar(x0)}")
            num, den = num.deflate(x0), den.deflate(x0)
        return num(x0) / den(x0)


def _row_to_integers(row: Sequence[Fraction]) -> list[int]:
    lcm = reduce(lambda acc, q: acc * q.denominator // math.gcd(acc, q.denominator), row, 1)
    return [int(q * lcm) for q in row]


def nullspace(m: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Basis of the right nullspace of ``m``.

    Rows are cleared to integers and reduced to echelon form with Bareiss
    fraction-free elimination; the basis is then read off by exact
    back-substitution. Each basis vector is scaled so that its first nonzero
    entry is 1.
    """
    rows = [_row_to_integers([to_scalar(x) for x in r]) for r in m]
    if not rows:
        return []
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("matrix rows have different lengths")

    pivots: list[int] = []
    prev = 1
    r = 0
    for col in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][col]
        for i in range(r + 1, len(rows)):
            lead = rows[i][col]
            new = []
            for j in range(ncols):
                q, rem = divmod(piv * rows[i][j] - lead * rows[r][j], prev)
                assert rem == 0, "Bareiss division must be exact"
                new.append(q)
            rows[i] = new
        prev = piv
        pivots.append(col)
        r += 1

    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            s = sum((rows[i][j] * v[j] for j in range(pc + 1, ncols)), Fraction(0))
            v[pc] = -s / rows[i][pc]
        lead = next(x for x in v if x != 0)
        basis.append(tuple(x / lead for x in v))
    return basis


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m]

"""Forward direction: Pearson data (phi, psi) on a lattice -> regularity and recurrence.

For a functional u with D(phi u) = S(psi u), phi(z) = a z^2 + b z + c and
psi(z) = d z + e, the monic orthogonal polynomials satisfy

    P_{n+1} = (z - B_n) P_n - C_n P_{n-1}

with B_n, C_{n+1} given in closed form through auxiliary quantities d_n, e_n
and a quadratic phi^[n]. The q-lattice and quadratic-lattice formulas are
kept as two separate code paths.

Quadratic-lattice conventions follow the forms checked against the weak
Pearson equation (see ``tests/test_pearson.py``)::

    B_n     = n e_{n-1}/d_{2n-2} - (n+1) e_n/d_{2n} - (c4/2) n (n-1)
    phi^[n] = a z^2 + (b + 3/2 c4 n d_n) z + phi(c4 n^2/4)
              + (c4 n/2) psi(c4 n^2/4) - (n/4)(4 c4 c6 - c5^2) d_n

Formula evaluation is exact. When a literal substitution hits 0/0 (finite
families such as para-Krawtchouk do this at n = (N-1)/2), the expression is
rebuilt as a rational function of the index variable (n itself on quadratic
lattices, t = r^n on q-lattices) and evaluated after cancelling the common
factor. A genuine pole raises :class:`DivisionByZeroInFormula`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .algebra import Polynomial, RationalFunction, to_scalar
from .errors import DivisionByZeroInFormula, InvalidParameters
from .lattice import Lattice, QLinear, Quadratic


@dataclass(frozen=True)
class PearsonData:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction

    def __post_init__(self):
        for name in "abcde":
            object.__setattr__(self, name, to_scalar(getattr(self, name)))
        if not any(self.as_tuple()):
            raise InvalidParameters("phi and psi cannot both vanish identically")

    def as_tuple(self) -> tuple[Fraction, ...]:
        return (self.a, self.b, self.c, self.d, self.e)

    @property
    def phi(self) -> Polynomial:
        return Polynomial([self.c, self.b, self.a])

    @property
    def psi(self) -> Polynomial:
        return Polynomial([self.e, self.d])

    def scaled(self, lam) -> PearsonData:
        lam = to_scalar(lam)
        return PearsonData(*(lam * x for x in self.as_tuple()))

    def normalized(self) -> PearsonData:
        """Rescaled so that d = 1."""
        if self.d == 0:
            raise ZeroDivisionError("cannot normalise Pearson data with d = 0")
        return self.scaled(1 / self.d)


# -- quadratic lattice ----------------------------------------------------------


def _quad_d(pd: PearsonData, k):
    return pd.a * k + pd.d


def _quad_e(pd: PearsonData, lat: Quadratic, k):
    return pd.b * k + pd.e + lat.c4 * pd.d * k * k / 2


def _quad_phin(pd: PearsonData, lat: Quadratic, n, z):
    dn = _quad_d(pd, n)
    w = lat.c4 * n * n / 4
    return (
        pd.a * z * z
        + (pd.b + 3 * lat.c4 * n * dn / 2) * z
        + pd.phi(w)
        + lat.c4 * n * pd.psi(w) / 2
        - n * (4 * lat.c4 * lat.c6 - lat.c5**2) * dn / 4
    )


def _quad_point(pd: PearsonData, lat: Quadratic, n):
    return -lat.c4 * n * n / 4 - _quad_e(pd, lat, n) / _quad_d(pd, 2 * n)


def _quad_B(pd, lat, n0, n):
    first = 0 if n0 == 0 else n * _quad_e(pd, lat, n - 1) / _quad_d(pd, 2 * n - 2)
    return first - (n + 1) * _quad_e(pd, lat, n) / _quad_d(pd, 2 * n) - lat.c4 * n * (n - 1) / 2


def _quad_C(pd, lat, n0, n):
    val = _quad_phin(pd, lat, n, _quad_point(pd, lat, n))
    # at n = 0 the d_{n-1}/d_{2n-1} ratio is identically 1
    ratio = 1 if n0 == 0 else _quad_d(pd, n - 1) / _quad_d(pd, 2 * n - 1)
    return -(n + 1) * ratio * val / _quad_d(pd, 2 * n + 1)


def _quad_phin_at_point(pd, lat, n0, n):
    return _quad_phin(pd, lat, n, _quad_point(pd, lat, n))


# -- q-lattice ------------------------------------------------------------------
# t stands for r^n; index j*n + m is r^m * t^j.


class _QIndex:
    def __init__(self, pd: PearsonData, lat: QLinear, t):
        self.pd, self.lat, self.t = pd, lat, t

    def _pow(self, j, m):
        return self.lat.r**m * self.t**j

    def alpha(self, j, m):
        p = self._pow(j, m)
        return (p + 1 / p) / 2

    def gamma(self, j, m):
        p = self._pow(j, m)
        r = self.lat.r
        return (p - 1 / p) / (r - 1 / r)

    def d(self, j, m):
        return self.pd.a * self.gamma(j, m) + self.pd.d * self.alpha(j, m)

    def e(self, j, m):
        pd, c3 = self.pd, self.lat.c3
        return (2 * pd.a * c3 + pd.b) * self.gamma(j, m) + (pd.d * c3 + pd.e) * self.alpha(j, m)

    def phin(self, z):
        pd, lat = self.pd, self.lat
        c1, c2, c3 = lat.c1, lat.c2, lat.c3
        al2m1 = lat.alpha**2 - 1
        quad = pd.d * al2m1 * self.gamma(2, 0) + pd.a * self.alpha(2, 0)
        lin = pd.phi.derivative()(c3) * self.alpha(1, 0) + pd.psi(c3) * al2m1 * self.gamma(1, 0)
        w = z - c3
        return quad * (w * w - 2 * c1 * c2) + lin * w + pd.phi(c3) + 2 * pd.a * c1 * c2

    def point(self):
        return self.lat.c3 - self.e(1, 0) / self.d(2, 0)


def _qlin_B(pd, lat, n0, t):
    ix = _QIndex(pd, lat, t)
    first = 0 if n0 == 0 else ix.gamma(1, 0) * ix.e(1, -1) / ix.d(2, -2)
    return lat.c3 + first - ix.gamma(1, 1) * ix.e(1, 0) / ix.d(2, 0)


def _qlin_C(pd, lat, n0, t):
    ix = _QIndex(pd, lat, t)
    val = ix.phin(ix.point())
    ratio = 1 if n0 == 0 else ix.d(1, -1) / ix.d(2, -1)
    return -ix.gamma(1, 1) * ratio * val / ix.d(2, 1)


def _qlin_phin_at_point(pd, lat, n0, t):
    ix = _QIndex(pd, lat, t)
    return ix.phin(ix.point())


# -- evaluation -----------------------------------------------------------------

_Formula = Callable[[PearsonData, Lattice, int, object], object]


def _index_value(lat: Lattice, n: int) -> Fraction:
    return Fraction(n) if isinstance(lat, Quadratic) else lat.r**n


def _evaluate(formula: _Formula, pd: PearsonData, lat: Lattice, n: int) -> Fraction:
    x0 = _index_value(lat, n)
    try:
        return formula(pd, lat, n, x0)
    except ZeroDivisionError:
        pass
    try:
        return formula(pd, lat, n, RationalFunction.variable()).value_at(x0)
    except ZeroDivisionError as exc:
        raise DivisionByZeroInFormula(f"formula has a pole at n = {n}: {exc}") from None


def _pick(lat: Lattice, quad, qlin):
    if isinstance(lat, Quadratic):
        return quad
    if isinstance(lat, QLinear):
        return qlin
    raise TypeError(f"not a lattice: {lat!r}")


def dn(pd: PearsonData, lat: Lattice, n: int) -> Fraction:
    if isinstance(lat, Quadratic):
        return _quad_d(pd, Fraction(n))
    return _QIndex(pd, lat, Fraction(1)).d(0, n)


def en(pd: PearsonData, lat: Lattice, n: int) -> Fraction:
    if isinstance(lat, Quadratic):
        return _quad_e(pd, lat, Fraction(n))
    return _QIndex(pd, lat, Fraction(1)).e(0, n)


def phi_n(pd: PearsonData, lat: Lattice, n: int) -> Polynomial:
    """phi^[n] as a polynomial of degree <= 2 in z."""
    z = Polynomial.identity()
    if isinstance(lat, Quadratic):
        return Polynomial([0]) + _quad_phin(pd, lat, Fraction(n), z)
    return Polynomial([0]) + _QIndex(pd, lat, lat.r**n).phin(z)


def phi_n_at_point(pd: PearsonData, lat: Lattice, n: int) -> Fraction:
    """phi^[n] evaluated where the regularity condition and C_{n+1} need it."""
    return _evaluate(_pick(lat, _quad_phin_at_point, _qlin_phin_at_point), pd, lat, n)


def recurrence(pd: PearsonData, lat: Lattice, n: int) -> tuple[Fraction, Fraction]:
    """(B_n, C_{n+1}) for the monic OPS of the Pearson functional."""
    if n < 0:
        raise ValueError("n must be non-negative")
    b_formula = _pick(lat, _quad_B, _qlin_B)
    c_formula = _pick(lat, _quad_C, _qlin_C)
    return _evaluate(b_formula, pd, lat, n), _evaluate(c_formula, pd, lat, n)


@dataclass(frozen=True)
class RegularityFailure:
    n: int
    reason: str  # "dn_zero" | "phin_zero"
    detail: str = ""


@dataclass(frozen=True)
class RegularityReport:
    """Outcome of checking the regularity conditions for n = 0..checked_to.

    ``regular_to`` is the last index at which both conditions held
    (``-1`` if n = 0 already fails).
    """

    checked_to: int
    first_failure: Optional[RegularityFailure] = None

    @property
    def regular(self) -> bool:
        return self.first_failure is None

    @property
    def regular_to(self) -> int:
        return self.checked_to if self.first_failure is None else self.first_failure.n - 1


def regularity(pd: PearsonData, lat: Lattice, limit: int) -> RegularityReport:
    """Check d_n != 0 and phi^[n](point_n) != 0 for n = 0..limit.

    The point is c3 - e_n/d_{2n} on q-lattices and -c4 n^2/4 - e_n/d_{2n} on
    quadratic ones. If d_{2n} = 0 makes the point itself undefined the
    failure is filed as ``dn_zero`` at n.
    """
    if limit < 0:
        raise ValueError("limit must be >= 0")
    for n in range(limit + 1):
        if dn(pd, lat, n) == 0:
            return RegularityReport(limit, RegularityFailure(n, "dn_zero", f"d_{n} = 0"))
        try:
            val = phi_n_at_point(pd, lat, n)
        except DivisionByZeroInFormula:
            return RegularityReport(
                limit, RegularityFailure(n, "dn_zero", f"d_{2 * n} = 0 leaves the evaluation point undefined")
            )
        if val == 0:
            return RegularityReport(limit, RegularityFailure(n, "phin_zero", f"phi^[{n}] vanishes at its point"))
    return RegularityReport(limit)


def recurrence_table(pd: PearsonData, lat: Lattice, count: int):
    """Table of (B_n, C_{n+1}) for n = 0..count-1."""
    from .recurrence import RecurrenceTable

    rows = [recurrence(pd, lat, n) for n in range(count)]
    return RecurrenceTable([b for b, _ in rows], [c for _, c in rows])

"""Para-Krawtchouk polynomials on the bi-lattice and their reclassification.

For odd N and 0 < gamma < 2 the family lives on the N + 1 points
y(s) = s + (gamma - 1)(1 - (-1)^s)/2, s = 0..N, which are exactly
x(v) = 2v + 1 over the half-integer set V_N. On the lattice x(s) = 2s + 1 it
is classical with

    a = 1/(1 - N),  b = (N - 1 + gamma)/(N - 1),  c = e = (1 - N - gamma)/2,  d = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import to_scalar
from .detector import Degenerate, Verdict, classify
from .errors import IndexOutOfRange, InvalidParameters, TableTooShort
from .lattice import Lattice, Quadratic
from .pearson import PearsonData, recurrence
from .recurrence import DiscreteFunctional, RecurrenceTable, gram_check, generate, pearson_weak_check

POSITIVE_LATTICE = Quadratic(0, 2, 1)
NEGATIVE_LATTICE = Quadratic(0, 3, 0)


@dataclass(frozen=True)
class ParaKrawtchoukParams:
    N: int
    gamma: Fraction

    def __post_init__(self):
        if isinstance(self.N, bool) or not isinstance(self.N, int):
            raise InvalidParameters("N must be an integer")
        object.__setattr__(self, "gamma", to_scalar(self.gamma))
        if self.N <= 0 or self.N % 2 == 0:
            raise InvalidParameters(f"N must be a positive odd integer, got {self.N}")
        if not 0 < self.gamma < 2:
            raise InvalidParameters(f"gamma must satisfy 0 < gamma < 2, got {self.gamma}")
        for n in range(self.N):
            if self.gamma**2 == (2 * n + 1 - self.N) ** 2:
                raise InvalidParameters(f"gamma^2 = (2n + 1 - N)^2 at n = {n}")

    @property
    def J(self) -> int:
        return (self.N - 1) // 2


def expected_pearson(p: ParaKrawtchoukParams) -> PearsonData:
    """Closed-form Pearson data on x(s) = 2s + 1 (normalised d = 1); needs N > 1."""
    N, g = p.N, p.gamma
    return PearsonData(
        a=Fraction(1, 1 - N),
        b=(N - 1 + g) / (N - 1),
        c=(1 - N - g) / 2,
        d=1,
        e=(1 - N - g) / 2,
    )


def pk_recurrence(p: ParaKrawtchoukParams, n: int) -> tuple[Fraction, Fraction]:
    """(B_n, C_{n+1}); n = N is allowed and gives C_{N+1} = 0."""
    if not 0 <= n <= p.N:
        raise IndexOutOfRange(f"n = {n} outside 0..{p.N}")
    N, g = p.N, p.gamma
    B = (N + g - 1) / 2
    num = (n + 1) * (n - N) * (2 * n + 1 - N - g) * (2 * n + 1 - N + g)
    C = -num / (4 * (2 * n - N) * (2 * n - N + 2))
    return B, C


def pk_table(p: ParaKrawtchoukParams) -> RecurrenceTable:
    """The quasi-definite part of the recurrence, n = 0..N-1."""
    rows = [pk_recurrence(p, n) for n in range(p.N)]
    return RecurrenceTable([b for b, _ in rows], [c for _, c in rows])


def bilattice_y(p: ParaKrawtchoukParams, s: int) -> Fraction:
    if not 0 <= s <= p.N:
        raise IndexOutOfRange(f"s = {s} outside 0..{p.N}")
    return Fraction(s) if s % 2 == 0 else s + p.gamma - 1


def support_v(p: ParaKrawtchoukParams) -> list[Fraction]:
    """V_N = {-1/2, gamma/2 - 1/2, 1/2, gamma/2 + 1/2, ..., (N-2)/2, gamma/2 + (N-2)/2}."""
    out = []
    for j in range(p.J + 1):
        base = Fraction(2 * j - 1, 2)
        out += [base, p.gamma / 2 + base]
    return out


def pochhammer(x, k: int) -> Fraction:
    """Rising factorial (x)_k = x (x+1) ... (x+k-1)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    x = to_scalar(x)
    out = Fraction(1)
    for i in range(k):
        out *= x + i
    return out


def _factorial(k: int) -> Fraction:
    return pochhammer(1, k)


WEIGHT_CONVENTIONS = ("verified", "as_printed")


def _prefactor(p: ParaKrawtchoukParams, sign: int) -> Fraction:
    return Fraction(1, 2**p.N) * pochhammer(1 + sign * p.gamma / 2, p.J) / pochhammer(Fraction(1, 2), p.J)


def omega1(p: ParaKrawtchoukParams, m: int, convention: str = "verified") -> Fraction:
    """Weight on the even nodes m = 0, 2, ..., N-1."""
    J, g, h = p.J, p.gamma, m // 2
    pre = _prefactor(p, -1 if convention == "verified" else +1)
    return pre * pochhammer(-J, h) * pochhammer(-g / 2 - J, h) / (_factorial(h) * pochhammer(1 - g / 2, h))


def omega2(p: ParaKrawtchoukParams, m: int, convention: str = "verified") -> Fraction:
    """Weight on the odd nodes, as a function of m = y(s) - gamma."""
    J, g, h = p.J, p.gamma, m // 2
    pre = _prefactor(p, +1 if convention == "verified" else -1)
    return pre * pochhammer(-J, h) * pochhammer(g / 2 - J, h) / (_factorial(h) * pochhammer(1 + g / 2, h))


def pk_weight(p: ParaKrawtchoukParams, s: int, convention: str = "verified") -> Fraction:
    """omega(y(s)): omega_1(s) for even s, omega_2(y(s) - gamma) = omega_2(s - 1) for odd s.

    The commonly printed form of omega_1/omega_2 carries the prefactors
    (1 + gamma/2)_J and (1 - gamma/2)_J the other way round; with that
    form (``convention="as_printed"``) the two parity classes are off by
    a constant ratio and P_N is not orthogonal to P_0. The default
    ``"verified"`` form matches the Christoffel weights of the recurrence
    and has total mass 1.
    """
    if convention not in WEIGHT_CONVENTIONS:
        raise ValueError(f"unknown weight convention {convention!r}")
    if not 0 <= s <= p.N:
        raise IndexOutOfRange(f"s = {s} outside 0..{p.N}")
    return omega1(p, s, convention) if s % 2 == 0 else omega2(p, s - 1, convention)


def pk_functional(p: ParaKrawtchoukParams, convention: str = "verified") -> DiscreteFunctional:
    return DiscreteFunctional(
        [bilattice_y(p, s) for s in range(p.N + 1)],
        [pk_weight(p, s, convention) for s in range(p.N + 1)],
    )


@dataclass
class CaseStudyReport:
    params: ParaKrawtchoukParams
    verdicts: list[tuple[Lattice, Verdict]]
    gram: list[list[Fraction]]
    total_mass: Fraction
    orthogonal: bool
    norms_match: bool
    first_gram_failure: Optional[tuple[int, int]] = None
    pearson_degree: int = -1  # largest K passing the weak check on the discrete functional
    notes: list[str] = field(default_factory=list)


def _gram_diagnostics(p: ParaKrawtchoukParams, t: RecurrenceTable, u: DiscreteFunctional):
    polys = generate(t, p.N)
    G = gram_check(u, polys)
    orthogonal, norms_match, first = True, True, None
    for i in range(len(G)):
        for j in range(len(G)):
            if i != j and G[i][j] != 0:
                orthogonal = False
                first = first or (i, j)
    prod = Fraction(1)
    for n in range(1, len(G)):
        prod *= t.Cn(n)
        if G[n][n] != G[0][0] * prod:
            norms_match = False
            first = first or (n, n)
    return G, orthogonal, norms_match, first


def pearson_degree(u: DiscreteFunctional, pd: PearsonData, lat: Lattice, k_max: int) -> int:
    """Largest K <= k_max with the weak Pearson equation holding for k = 0..K (-1 if none)."""
    moments = u.moments(k_max + 2)
    best = -1
    for K in range(k_max + 1):
        if not pearson_weak_check(moments, pd, lat, K):
            break
        best = K
    return best


def pk_casestudy(
    p: ParaKrawtchoukParams,
    lattices: tuple[Lattice, ...] = (POSITIVE_LATTICE, NEGATIVE_LATTICE),
    convention: str = "verified",
) -> CaseStudyReport:
    """Classify the para-Krawtchouk table on each lattice and check its orthogonality.

    Verification covers the whole quasi-definite table, n = 0..N-1.
    """
    t = pk_table(p)
    u = pk_functional(p, convention)
    verdicts: list[tuple[Lattice, Verdict]] = []
    notes: list[str] = []
    for lat in lattices:
        try:
            verdicts.append((lat, classify(t, lat, verify_to=t.max_index)))
        except (TableTooShort, ValueError) as exc:
            verdicts.append((lat, Degenerate(f"table n = 0..{t.max_index} too short to classify: {exc}")))
    G, orthogonal, norms_match, first = _gram_diagnostics(p, t, u)
    if not (orthogonal and norms_match):
        notes.append(f"Gram check failed first at {first}; total mass {u.mass}")

    degree = -1
    if p.N > 1:
        degree = pearson_degree(u, expected_pearson(p), POSITIVE_LATTICE, 2 * p.N + 2)
    return CaseStudyReport(
        params=p,
        verdicts=verdicts,
        gram=G,
        total_mass=u.mass,
        orthogonal=orthogonal,
        norms_match=norms_match,
        first_gram_failure=first,
        pearson_degree=degree,
        notes=notes,
    )


def check_pk_against_forward(p: ParaKrawtchoukParams, pd: PearsonData, lat: Lattice = POSITIVE_LATTICE) -> bool:
    """Feeding ``pd`` back through the forward formulas reproduces B_n, C_{n+1}, n < N."""
    return all(recurrence(pd, lat, n) == pk_recurrence(p, n) for n in range(p.N))

"""Three-term recurrence machinery: monic polynomials, moments, Gram matrices.

Duality conventions for the weak Pearson equation:
<Du, p> = -<u, Dp> and <Su, p> = <u, Sp>, so D(phi u) = S(psi u) reads

    <u, phi * Dp + psi * Sp> = 0   for every polynomial p.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from .algebra import Polynomial, to_scalar
from .errors import InsufficientMoments, InvalidParameters
from .lattice import Lattice, d_op, s_op

if TYPE_CHECKING:
    from .pearson import PearsonData


@dataclass(frozen=True)
class RecurrenceTable:
    """Recurrence coefficients paired by index: ``B[n]`` is B_n, ``C[n]`` is C_{n+1}.

    Both lists cover n = 0..M (``M = max_index``). Every C_k must be nonzero,
    i.e. the table describes a quasi-definite functional through degree M+1.
    """

    B: tuple[Fraction, ...]
    C: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "B", tuple(to_scalar(x) for x in self.B))
        object.__setattr__(self, "C", tuple(to_scalar(x) for x in self.C))
        if len(self.B) != len(self.C):
            raise InvalidParameters("B and C must have the same length (B_n paired with C_{n+1})")
        if not self.B:
            raise InvalidParameters("empty recurrence table")
        for k, c in enumerate(self.C, start=1):
            if c == 0:
                raise InvalidParameters(f"C_{k} = 0: table is not quasi-definite")

    @property
    def max_index(self) -> int:
        return len(self.B) - 1

    def __len__(self) -> int:
        return len(self.B)

    def Cn(self, k: int) -> Fraction:
        """C_k with the usual 1-based index."""
        return self.C[k - 1]


def generate(t: RecurrenceTable, upto: int) -> list[Polynomial]:
    """Monic P_0..P_upto from P_{n+1} = (z - B_n) P_n - C_n P_{n-1}."""
    if upto > len(t):
        raise InvalidParameters(f"table supports degrees up to {len(t)}, asked for {upto}")
    z = Polynomial.identity()
    polys = [Polynomial([1])]
    prev = Polynomial()
    for n in range(upto):
        c = t.Cn(n) if n >= 1 else 0
        nxt = (z - t.B[n]) * polys[-1] - prev * c
        prev = polys[-1]
        polys.append(nxt)
    return polys


def moments_from_recurrence(t: RecurrenceTable, K: int, size: int | None = None) -> list[Fraction]:
    """m_0..m_K of the functional with m_0 = 1 that orthogonalises ``t``.

    m_k is the (0, 0) entry of J^k for the truncated monic Jacobi matrix J
    (diagonal B, superdiagonal 1, subdiagonal C). Any truncation of size
    > K/2 gives the same values; ``size`` defaults to the smallest one.
    """
    if K < 0:
        raise ValueError("K must be >= 0")
    need = K // 2 + 1
    size = need if size is None else size
    if size < need:
        raise ValueError(f"truncation size {size} too small for K = {K}")
    if size > len(t):
        raise InsufficientMoments(f"table of length {len(t)} determines moments only up to m_{2 * len(t) - 1}")
    # row vector e_0^T J^k, one multiplication per moment
    v = [Fraction(0)] * size
    v[0] = Fraction(1)
    out = []
    for _ in range(K + 1):
        out.append(v[0])
        w = [Fraction(0)] * size
        for i, vi in enumerate(v):
            if vi == 0:
                continue
            w[i] += vi * t.B[i]
            if i + 1 < size:
                w[i + 1] += vi
            if i >= 1:
                w[i - 1] += vi * t.Cn(i)
        v = w
    return out


def pair_moments(moments: Sequence[Fraction], p: Polynomial) -> Fraction:
    """<u, p> for the functional with the given moments."""
    if p.degree >= len(moments):
        raise InsufficientMoments(f"degree {p.degree} needs moment m_{int(p.degree)}")
    return sum((c * moments[k] for k, c in enumerate(p.coeffs)), Fraction(0))


@dataclass(frozen=True)
class DiscreteFunctional:
    """<u, p> = sum_i weights[i] * p(nodes[i])."""

    nodes: tuple[Fraction, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(to_scalar(x) for x in self.nodes))
        object.__setattr__(self, "weights", tuple(to_scalar(x) for x in self.weights))
        if len(self.nodes) != len(self.weights):
            raise InvalidParameters("nodes and weights differ in length")
        if len(set(self.nodes)) != len(self.nodes):
            raise InvalidParameters("nodes must be pairwise distinct")

    def pair(self, p: Polynomial) -> Fraction:
        return sum((w * p(x) for x, w in zip(self.nodes, self.weights)), Fraction(0))

    def moments(self, K: int) -> list[Fraction]:
        out = []
        for k in range(K + 1):
            out.append(sum((w * x**k for x, w in zip(self.nodes, self.weights)), Fraction(0)))
        return out

    @property
    def mass(self) -> Fraction:
        return sum(self.weights, Fraction(0))


def gram_check(u: DiscreteFunctional, polys: Sequence[Polynomial]) -> list[list[Fraction]]:
    """Exact Gram matrix G[n][m] = <u, P_n P_m>."""
    values = [[p(x) for x in u.nodes] for p in polys]
    n = len(polys)
    G = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s = sum((w * a * b for w, a, b in zip(u.weights, values[i], values[j])), Fraction(0))
            G[i][j] = G[j][i] = s
    return G


def weak_form_row(moments: Sequence[Fraction], lat: Lattice, k: int) -> list[Fraction]:
    """Coefficients of (a, b, c, d, e) in <u, phi D(z^k) + psi S(z^k)>."""
    zk = Polynomial.monomial(k)
    dz, sz = d_op(lat, zk), s_op(lat, zk)
    z = Polynomial.identity()
    basis = [z * z * dz, z * dz, dz, z * sz, sz]
    return [pair_moments(moments, p) for p in basis]


def pearson_weak_check(moments: Sequence[Fraction], pd: PearsonData, lat: Lattice, K: int) -> bool:
    """True iff <u, phi D(z^k) + psi S(z^k)> = 0 for k = 0..K."""
    if len(moments) < K + 2:
        raise InsufficientMoments(f"rows up to k = {K} need moments m_0..m_{K + 1}")
    coeffs = pd.as_tuple()
    for k in range(K + 1):
        row = weak_form_row(moments, lat, k)
        if sum((r * c for r, c in zip(row, coeffs)), Fraction(0)) != 0:
            return False
    return True

"""Inverse direction: decide from (B_n, C_{n+1}) whether a sequence is classical.

Quadratic lattices use the closed-form inversion of (B_0, B_1, C_1, C_2).
q-lattices recover (phi, psi) from the moments via the weak Pearson
equation. Either way, each candidate is pushed back through the forward
formulas and compared with the table entry by entry.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import nullspace, to_scalar
from .errors import DivisionByZeroInFormula, InsufficientMoments, InversionUndefined, TableTooShort
from .lattice import Lattice, Quadratic
from .pearson import PearsonData, recurrence
from .recurrence import RecurrenceTable, moments_from_recurrence, weak_form_row

DEFAULT_VERIFY_TO = 12
# n = 0 and n = 1 are consumed by the inversion itself
MIN_VERIFY_TO = 2
_MIN_ROWS = 4


@dataclass(frozen=True)
class Classical:
    pd: PearsonData
    verified_to: int  # table reproduced for every n = 0..verified_to

    name = "classical"


@dataclass(frozen=True)
class NotClassical:
    witness_n: int
    which: str  # "B" or "C": the first entry that disagrees

    name = "not_classical"


@dataclass(frozen=True)
class Degenerate:
    reason: str

    name = "degenerate"


Verdict = Union[Classical, NotClassical, Degenerate]


def invert_quadratic(B0, B1, C1, C2, lat: Quadratic) -> PearsonData:
    """Pearson data with d = 1 reproducing B_0, B_1, C_1, C_2 on a quadratic lattice.

    e = -B0, and with beta = c4/4::

        A = -1/3 + ((B1 - B0)^2 - 8 beta (B0 + B1 - 2 beta)
                    + 4 C1 + 16 beta c6 - c5^2) / (6 C2)
        F = (A + 1) B1 + 2 beta - (B0 + B1)/2
        a = A,  b = -A B0 - F,  c = F B0 - (A + 1) C1
    """
    B0, B1, C1, C2 = (to_scalar(v) for v in (B0, B1, C1, C2))
    if C2 == 0:
        raise InversionUndefined("C2 = 0: the inversion divides by C2")
    beta = lat.beta
    A = Fraction(-1, 3) + (
        (B1 - B0) ** 2 - 8 * beta * (B0 + B1 - 2 * beta) + 4 * C1 + 16 * beta * lat.c6 - lat.c5**2
    ) / (6 * C2)
    F = (A + 1) * B1 + 2 * beta - (B0 + B1) / 2
    return PearsonData(a=A, b=-A * B0 - F, c=F * B0 - (A + 1) * C1, d=1, e=-B0)


def pearson_solve_from_moments(moments: Sequence[Fraction], lat: Lattice, rows: int | None = None) -> list[PearsonData]:
    """Nullspace of the weak Pearson system in (a, b, c, d, e).

    Row k pairs phi D(z^k) + psi S(z^k) with the moments, k = 0..rows-1.
    ``rows`` defaults to 6, or fewer when the moments run out (row k needs
    m_{k+1}). Each basis vector is returned as PearsonData, unnormalised.
    """
    moments = [to_scalar(m) for m in moments]
    if len(moments) < _MIN_ROWS + 1:
        raise InsufficientMoments(f"need at least {_MIN_ROWS + 1} moments, got {len(moments)}")
    if moments[0] == 0:
        raise InsufficientMoments("m_0 must be nonzero")
    if rows is None:
        rows = min(6, len(moments) - 1)
    if rows + 1 > len(moments):
        raise InsufficientMoments(f"{rows} rows need moments m_0..m_{rows}")
    system = [weak_form_row(moments, lat, k) for k in range(rows)]
    return [PearsonData(*v) for v in nullspace(system)]


def _moment_witness(j: int) -> NotClassical:
    # deepest table entry feeding m_j: C_{j/2} (index j/2 - 1) or B_{(j-1)/2}
    if j % 2 == 0:
        return NotClassical(j // 2 - 1, "C")
    return NotClassical((j - 1) // 2, "B")


def _qlinear_candidates(t: RecurrenceTable, lat: Lattice) -> Union[list[PearsonData], NotClassical]:
    moments = moments_from_recurrence(t, 2 * len(t) - 1)
    rows = _MIN_ROWS
    while True:
        basis = pearson_solve_from_moments(moments, lat, rows)
        if not basis:
            return _moment_witness(rows)
        if len(basis) == 1 or rows + 1 >= len(moments):
            return basis
        rows += 1


def _verify(pd: PearsonData, t: RecurrenceTable, lat: Lattice, verify_to: int) -> Verdict:
    for n in range(verify_to + 1):
        try:
            B, C = recurrence(pd, lat, n)
        except DivisionByZeroInFormula as exc:
            return Degenerate(f"recovered Pearson data are singular at n = {n}: {exc}")
        if B != t.B[n]:
            return NotClassical(n, "B")
        if C != t.C[n]:
            return NotClassical(n, "C")
    return Classical(pd, verify_to)


def classify(t: RecurrenceTable, lat: Lattice, verify_to: int = DEFAULT_VERIFY_TO) -> Verdict:
    """Decide whether ``t`` holds the recurrence coefficients of a classical OPS on ``lat``.

    The verdict is Classical only if the recovered Pearson data (normalised
    to d = 1) reproduce B_n and C_{n+1} exactly for n = 0..verify_to.
    """
    if verify_to < MIN_VERIFY_TO:
        raise ValueError(f"verify_to must be >= {MIN_VERIFY_TO}")
    if t.max_index < verify_to:
        raise TableTooShort(f"table has n = 0..{t.max_index}, verification asked for n = 0..{verify_to}")

    if isinstance(lat, Quadratic):
        candidates = [invert_quadratic(t.B[0], t.B[1], t.C[0], t.C[1], lat)]
    else:
        found = _qlinear_candidates(t, lat)
        if isinstance(found, NotClassical):
            return found
        candidates = found

    outcome: Verdict | None = None
    for cand in candidates:
        if cand.d == 0:
            outcome = outcome or Degenerate("candidate Pearson data have d = 0 (not regular)")
            continue
        verdict = _verify(cand.normalized(), t, lat, verify_to)
        if isinstance(verdict, Classical):
            return verdict
        if outcome is None or isinstance(outcome, Degenerate):
            outcome = verdict
    assert outcome is not None
    return outcome

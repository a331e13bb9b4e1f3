"""Classical orthogonal polynomials on q-linear and quadratic lattices, in exact arithmetic."""

from .algebra import Polynomial, interpolate, nullspace, poly_eval, to_scalar
from .detector import Classical, Degenerate, NotClassical, classify, invert_quadratic, pearson_solve_from_moments
from .lattice import QLinear, Quadratic, alpha_beta, d_op, s_op, x_eval
from .para_krawtchouk import ParaKrawtchoukParams, pk_casestudy, pk_functional, pk_recurrence, pk_table
from .pearson import PearsonData, dn, en, phi_n, recurrence, recurrence_table, regularity
from .recurrence import (
    DiscreteFunctional,
    RecurrenceTable,
    generate,
    gram_check,
    moments_from_recurrence,
    pearson_weak_check,
)

__all__ = [
    "Classical",
    "Degenerate",
    "DiscreteFunctional",
    "NotClassical",
    "ParaKrawtchoukParams",
    "PearsonData",
    "Polynomial",
    "QLinear",
    "Quadratic",
    "RecurrenceTable",
    "alpha_beta",
    "classify",
    "d_op",
    "dn",
    "en",
    "generate",
    "gram_check",
    "interpolate",
    "invert_quadratic",
    "moments_from_recurrence",
    "nullspace",
    "pearson_solve_from_moments",
    "pearson_weak_check",
    "phi_n",
    "pk_casestudy",
    "pk_functional",
    "pk_recurrence",
    "pk_table",
    "poly_eval",
    "recurrence",
    "recurrence_table",
    "regularity",
    "s_op",
    "to_scalar",
    "x_eval",
]

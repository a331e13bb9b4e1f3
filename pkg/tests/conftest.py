from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from oplattice import QLinear, Quadratic

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# PASS/FAIL lines from test_acceptance, echoed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def small_fractions(bound: int = 20, nonzero: bool = False):
    num = st.integers(-bound, bound)
    if nonzero:
        num = num.filter(lambda v: v != 0)
    return st.builds(Fraction, num, st.integers(1, bound))


@st.composite
def quadratic_lattices(draw):
    c4, c5 = draw(small_fractions(6)), draw(small_fractions(6))
    return Quadratic(c4, c5, draw(small_fractions(6, nonzero=c4 == c5 == 0)))


@st.composite
def qlinear_lattices(draw):
    r = draw(st.sampled_from([Fraction(1, 3), Fraction(1, 2), Fraction(2), Fraction(3)]))
    c1 = draw(small_fractions(6))
    c2 = draw(small_fractions(6, nonzero=c1 == 0))
    return QLinear(r, c1, c2, draw(small_fractions(6)))


def lattices():
    return st.one_of(quadratic_lattices(), qlinear_lattices())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from virmod.kernel import LaurentPoly, UniPoly

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def laurent_polys(draw, max_terms=5):
    keys = draw(st.lists(st.integers(-8, 8), max_size=max_terms, unique=True))
    return LaurentPoly({k: draw(rationals) for k in keys})


@st.composite
def uni_polys(draw, max_degree=6):
    return UniPoly(draw(st.lists(rationals, max_size=max_degree + 1)))


@pytest.fixture
def F():
    return Fraction


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)

from fractions import Fraction as F

import pytest
from hypothesis import strategies as st

from twobytwo.table import EXACT, FLOAT, CountTable, ProbTable, from_counts, from_probs


@pytest.fixture
def t1():
    return from_probs(0.4, 0.1, 0.2, 0.3)


@pytest.fixture
def t1_exact():
    return from_counts(CountTable(4, 1, 2, 3))


@pytest.fixture
def tu():
    return from_probs(0.25, 0.25, 0.25, 0.25)


@pytest.fixture
def tu_exact():
    return from_counts(CountTable(1, 1, 1, 1))


@pytest.fixture
def tneg_exact():
    return from_probs("0.1", "0.4", "0.3", "0.2", policy=EXACT)


@pytest.fixture
def indep_exact():
    return from_probs("0.3", "0.2", "0.3", "0.2", policy=EXACT)


@st.composite
def positive_counts(draw, max_cell=60):
    cells = [draw(st.integers(1, max_cell)) for _ in range(4)]
    return CountTable(*cells)


@st.composite
def exact_tables(draw, max_cell=60):
    return from_counts(draw(positive_counts(max_cell)))


@st.composite
def float_tables(draw):
    w = [draw(st.floats(1e-3, 1.0)) for _ in range(4)]
    total = sum(w)
    return from_probs(*(x / total for x in w), policy=FLOAT)

import os
import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.market import validate_market  # noqa: E402
from models.scheme import MatrixScheme  # noqa: E402


@st.composite
def small_schemes(draw, max_acts=5, max_states=3, values=(0, 1, 2)):
    m = draw(st.integers(1, max_states))
    acts = draw(st.lists(st.lists(st.sampled_from(values), min_size=m, max_size=m), max_size=max_acts))
    return MatrixScheme(acts, m)


@st.composite
def small_markets(draw, max_assets=3, max_states=3):
    m = draw(st.integers(1, max_states))
    n = draw(st.integers(1, max_assets))
    entry = st.sampled_from([Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2)])
    rows = [[Fraction(1)] * m] + [draw(st.lists(entry, min_size=m, max_size=m)) for _ in range(n - 1)]
    p1 = draw(st.sampled_from([Fraction(1), Fraction(4, 5), Fraction(1, 2)]))
    prices = [p1] + [draw(entry) for _ in range(n - 1)]
    return validate_market(rows, prices)


@pytest.fixture
def binomial():
    return validate_market([[1, 1], [2, '1/2']], [1, 1])


@pytest.fixture
def dominated():
    return validate_market([[1, 1], [2, 1]], [1, 1])

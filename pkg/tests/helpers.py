"""Shared hypothesis strategies."""

import random

from hypothesis import strategies as st

from birkhoff6.cyclotomic import CycNum
from birkhoff6.sampling import random_endpoint, random_problem

fractions = st.fractions(min_value=-6, max_value=6, max_denominator=7)
cycnums = st.builds(CycNum, fractions, fractions, fractions, fractions)
nonzero_cycnums = cycnums.filter(lambda x: not x.is_zero())
seeds = st.integers(min_value=0, max_value=2**32 - 1)

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LOG: list = []


@st.composite
def problems(draw, max_q=5):
    return random_problem(random.Random(draw(seeds)), max_q)


@st.composite
def endpoints(draw, name="A", max_q=5):
    return random_endpoint(random.Random(draw(seeds)), name, max_q)

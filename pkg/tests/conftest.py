from fractions import Fraction

import pytest
from hypothesis import strategies as st

from umbral_tsh import Umbra

small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)
nonzero_rationals = small_rationals.filter(lambda q: q != 0)


def rational_umbrae(order=6):
    return st.lists(small_rationals, min_size=order, max_size=order).map(Umbra.from_values)


def invertible_umbrae(order=6):
    return st.tuples(nonzero_rationals, st.lists(small_rationals, min_size=order - 1, max_size=order - 1)).map(
        lambda p: Umbra.from_values([p[0], *p[1]]))


@pytest.fixture
def rng_umbrae():
    """Three fixed pseudo-random rational umbrae of order 12."""
    import random

    rng = random.Random(20240611)
    out = []
    for _ in range(3):
        out.append(Umbra.from_values(Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(12)))
    return out


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

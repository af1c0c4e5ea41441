import random

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from nichols.braiding import DiagonalBraiding
from nichols.cyclo import CyclotomicNumber, cyc_root

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

SMALL_CONDUCTORS = (1, 3, 4, 5, 8, 12, 24)


@st.composite
def cyclotomics(draw, conductors=SMALL_CONDUCTORS):
    n = draw(st.sampled_from(conductors))
    size = max(1, n)
    coeffs = draw(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=1, max_size=size))
    return CyclotomicNumber(n, coeffs)


@st.composite
def roots_braidings(draw, moduli=(2, 3, 4, 5, 6, 8, 10, 12)):
    n = draw(st.sampled_from(moduli))
    e = draw(st.lists(st.integers(0, n - 1), min_size=4, max_size=4))
    return DiagonalBraiding.from_exponents(n, *e)


def zeta(n: int, k: int = 1) -> CyclotomicNumber:
    return cyc_root(k, n)


@pytest.fixture
def rng():
    return random.Random(20261018)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from hypdual.field import GaussianRational

ACCEPTANCE_LINES: list[str] = []


def rationals(bound=30):
    return st.builds(
        Fraction, st.integers(-bound, bound), st.integers(1, bound)
    )


def gaussians(bound=30):
    return st.builds(GaussianRational, rationals(bound), rationals(bound))


def nonzero_gaussians(bound=30):
    return gaussians(bound).filter(lambda x: not x.is_zero())


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

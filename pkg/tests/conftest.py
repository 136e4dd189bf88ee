from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from bethe_lab.gaudin import GaudinConfig

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def rationals(num=20, den=10):
    return st.builds(Fraction, st.integers(-num, num), st.integers(1, den))


def distinct_rationals(k, num=20, den=10):
    return st.lists(rationals(num, den), min_size=k, max_size=k, unique=True)


@pytest.fixture
def cfg22():
    return GaudinConfig(2, 2, (0, 1), (0, 1))


@pytest.fixture
def cfg23():
    return GaudinConfig(2, 3, (Fraction(1, 2), Fraction(-3)), (0, 2, Fraction(-1, 3)))


@pytest.fixture
def cfg32():
    return GaudinConfig(3, 2, (1, 2, Fraction(5, 2)), (Fraction(1, 3), -2))


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

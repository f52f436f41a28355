import random
from fractions import Fraction

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(20240611)


# rational points where no cyclotomic denominator or small r^m s^n = 1 can vanish
GENERIC_POINTS = [
    {"r": Fraction(2), "s": Fraction(3)},
    {"r": Fraction(-5, 7), "s": Fraction(11, 3)},
    {"r": Fraction(13, 2), "s": Fraction(-3, 17)},
]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

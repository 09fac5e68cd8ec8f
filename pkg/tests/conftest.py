import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from envalg.freealg import FreePoly
from envalg.symmetrize import SymPoly

_acceptance: dict = {}


def random_free(rng: random.Random, n: int, max_deg: int, max_terms: int = 6) -> FreePoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        m = rng.randint(0, max_deg)
        w = tuple(rng.randint(1, n) for _ in range(m))
        terms[w] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return FreePoly(n, terms)


def random_sym(rng: random.Random, n: int, max_deg: int, max_terms: int = 5) -> SymPoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        alpha = [0] * n
        for _ in range(rng.randint(0, max_deg)):
            alpha[rng.randrange(n)] += 1
        terms[tuple(alpha)] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return SymPoly(n, terms)


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def free_polys(draw, n=None, max_deg=3, max_terms=5):
    n = draw(st.integers(1, 3)) if n is None else n
    words = st.lists(st.integers(1, n), max_size=max_deg).map(tuple)
    terms = draw(st.dictionaries(words, rationals, max_size=max_terms))
    return FreePoly(n, terms)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _acceptance[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        terminalreporter.write_line(f"{_acceptance[name]}  {name}")

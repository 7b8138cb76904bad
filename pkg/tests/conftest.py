import random

import pytest
from hypothesis import strategies as st


@st.composite
def binomial_instances(draw, max_vars=6, max_terms=12, max_cap=5):
    """(terms, caps) with distinct endpoints in every term."""
    n = draw(st.integers(2, max_vars))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda t: t[0] != t[1])
    terms = draw(st.lists(pair, min_size=0, max_size=max_terms))
    caps = draw(st.lists(st.integers(0, max_cap), min_size=n, max_size=n))
    return terms, caps


def random_instance(rng: random.Random, max_vars=6, max_terms=12, max_cap=5):
    n = rng.randint(2, max_vars)
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        a, b = rng.sample(range(n), 2)
        terms.append((a, b))
    caps = [rng.randint(0, max_cap) for _ in range(n)]
    return terms, caps


@pytest.fixture
def rng():
    return random.Random(20261019)


# Lines recorded by the acceptance tests, printed once at the end of the run.
ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])

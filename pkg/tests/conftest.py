import random
from itertools import combinations

import pytest

from powercycles.hypergraph import Hypergraph

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_hypergraph(n, r, p, rng):
    return Hypergraph(n, r, [e for e in combinations(range(n), r) if rng.random() < p])


@pytest.fixture
def rng():
    return random.Random(20240601)

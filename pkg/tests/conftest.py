import json
import random
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from coapprox.linalg import rank
from coapprox.subspace import Basis

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"

EXAMPLE_ROWS = [[7, -5, 2, 6, -7, -5, 1], [1, 3, 4, 3, -1, 3, 2], [3, -7, -4, 5, -3, -7, -2]]

# nonzero entries of the three fixture targets
CASE_ENTRIES = {
    1: {(1, 1): 2, (1, 5): 4, (2, 2): 1, (2, 6): 3, (3, 3): 4, (4, 4): 1,
        (5, 1): -7, (5, 5): -2, (6, 2): 2, (6, 6): 1},
    2: {(1, 1): 3, (1, 5): -5, (2, 2): 1, (2, 6): 3, (3, 3): 4, (4, 4): 1,
        (5, 1): -5, (5, 5): -3, (6, 2): 2, (6, 6): 1},
    3: {(1, 1): 14, (1, 5): 1, (2, 2): 1, (2, 6): 3, (3, 3): 4, (4, 4): 1,
        (5, 1): 1, (5, 5): -14, (6, 2): 2, (6, 6): 1},
}

Y1 = [(6, 1, 4, 3, 3, 1, 1), (2, 5, 2, 3, 1, 5, 1), (4, 3, 8, 6, 2, 3, 2), (2, 1, 4, 9, 1, 1, 3)]
Y2 = [(2, -5, 3, 1, -2, -5, 2), (-4, 2, 2, -2, -4, 2, -4)]


def one_based(indices):
    return {i - 1 for i in indices}


def case_target(k):
    T = np.empty((7, 7), dtype=object)
    T[:] = Fraction(0)
    for (i, j), v in CASE_ENTRIES[k].items():
        T[i - 1, j - 1] = Fraction(v)
    return T


@pytest.fixture
def example_basis():
    return Basis.from_rows(EXAMPLE_ROWS)


@pytest.fixture(params=[1, 2, 3])
def case(request):
    return request.param


def random_basis(rng: random.Random, max_n=8, max_m=4, lo=-9, hi=9, repeat_prob=0.3):
    """Random independent diagonal basis; some components are copies or multiples of others."""
    while True:
        n = rng.randint(1, max_n)
        m = rng.randint(1, min(max_m, n))
        comps = []
        for _ in range(n):
            if comps and rng.random() < repeat_prob:
                src = rng.choice(comps)
                c = rng.choice([1, -1, 1, -1, 2, -3, Fraction(1, 2), Fraction(-1, 3)])
                row = [c * v for v in src]
                if any(not lo <= v <= hi for v in row):
                    row = [rng.choice([1, -1]) * v for v in src]
                comps.append(row)
            else:
                comps.append([Fraction(rng.randint(lo, hi)) for _ in range(m)])
        if rank(comps) == m:
            return Basis.from_rows([[row[k] for row in comps] for k in range(m)])


def random_invertible(rng: random.Random, m):
    while True:
        Q = [[Fraction(rng.randint(-3, 3)) for _ in range(m)] for _ in range(m)]
        if rank(Q) == m:
            return Q


def load_json(name):
    return json.loads((PROBLEMS / name).read_text())


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(n, ok, detail)``; asserts ``ok``."""
    lines = request.config.stash[_ACCEPTANCE]

    def record(number, ok, detail=""):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else "")
        lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

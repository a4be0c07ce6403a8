import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from primset.core import BoolMatrix, MatrixSet, has_zero_row_or_col  # noqa: E402

ACCEPTANCE_LINES = []


def random_matrix(n, rng, density=None):
    d = rng.uniform(0.15, 0.7) if density is None else density
    return BoolMatrix(n, tuple(sum(1 << j for j in range(n) if rng.random() < d)
                               for _ in range(n)))


def random_nz_matrix(n, rng):
    """No zero row or column; mixes near-permutations with random densities."""
    while True:
        if rng.random() < 0.4:
            perm = list(range(n))
            rng.shuffle(perm)
            rows = [1 << perm[i] for i in range(n)]
            for _ in range(rng.randint(0, 1)):
                rows[rng.randrange(n)] |= 1 << rng.randrange(n)
            a = BoolMatrix(n, tuple(rows))
        else:
            a = random_matrix(n, rng)
        if not has_zero_row_or_col(a):
            return a


def random_nz_set(n, m, rng):
    return MatrixSet(tuple(random_nz_matrix(n, rng) for _ in range(m)))


def random_set(n, m, rng, density=None):
    return MatrixSet(tuple(random_matrix(n, rng, density) for _ in range(m)))


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

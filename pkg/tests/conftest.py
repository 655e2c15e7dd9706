import random
from fractions import Fraction

import pytest

from ehrlat.polyhedra import Inequality, Polyhedron, PolyhedronError


def random_rational(rng, num=4, den=3):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_polytope(rng, dim=None, half_open=0.0):
    """Hull of a few random rational points; retries until full-dimensional."""
    while True:
        n = dim or rng.randint(1, 3)
        pts = [tuple(random_rational(rng) for _ in range(n)) for _ in range(rng.randint(n + 1, n + 3))]
        try:
            p = Polyhedron.from_vertices(pts)
        except PolyhedronError:
            continue
        if half_open and rng.random() < half_open:
            rows = list(p.inequalities)
            i = rng.randrange(len(rows))
            rows[i] = Inequality(rows[i].b, rows[i].a, True)
            p = Polyhedron(n, tuple(rows))
        return p


def polytope_corpus(seed, size, half_open=0.0):
    rng = random.Random(seed)
    return [random_polytope(rng, half_open=half_open) for _ in range(size)]


@pytest.fixture
def square():
    return Polyhedron.box([0, 0], [1, 1])


@pytest.fixture
def rng():
    return random.Random(20240611)


# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

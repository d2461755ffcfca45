from fractions import Fraction
from pathlib import Path

import pytest

from kinetic_delaunay.harness import InstanceDocument, generate
from kinetic_delaunay.kernel import MovingPoint

FIXTURES = Path(__file__).parent / "fixtures"


def mp(i, x, y, ux, uy):
    return MovingPoint(i, Fraction(x), Fraction(y), Fraction(ux), Fraction(uy))


def uniform(n, seed, window=(0, 10)):
    return generate("uniform", n, seed, window).points


def load_fixture(name) -> InstanceDocument:
    return InstanceDocument.load(FIXTURES / name)


@pytest.fixture
def kernel_quad():
    """Four points on the circle of radius 1 about (1, 0) at t = 0."""
    return [
        mp(0, 0, 0, 1, 0),
        mp(1, 2, 0, -1, 0),
        mp(2, 1, 1, 0, -1),
        mp(3, 1, -1, 1, 0),
    ]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

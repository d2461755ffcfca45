"""Seeded instance generators.

Start positions lie on the 1/10⁴ grid of the unit square and directions are
exact Pythagorean unit vectors, so every instance is exactly rational.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ..errors import DegenerateAtStart, GenerationExhausted, PreconditionViolated
from ..kernel.motion import MovingPoint, pythagorean_direction
from ..kinetic.static import static_delaunay
from .instance import InstanceDocument

GRID = 10 ** 4
MAX_PARAM = 10 ** 4
MAX_RETRIES = 200
KINDS = ("uniform", "clustered", "adversarial-two-lines")
DEFAULT_WINDOW = (Fraction(0), Fraction(10))


def random_direction(rng: random.Random) -> tuple[Fraction, Fraction]:
    m = rng.randint(2, MAX_PARAM)
    k = rng.randint(1, m - 1)
    return pythagorean_direction(m, k, rng.randrange(4), rng.random() < 0.5)


def _grid(rng: random.Random, lo: float = 0.0, hi: float = 1.0) -> Fraction:
    return Fraction(rng.randint(int(lo * GRID), int(hi * GRID)), GRID)


def _clustered(rng, i, centers):
    cx, cy = centers[i % len(centers)]
    x = min(max(cx + Fraction(rng.randint(-500, 500), GRID), Fraction(0)), Fraction(1))
    y = min(max(cy + Fraction(rng.randint(-500, 500), GRID), Fraction(0)), Fraction(1))
    return x, y, random_direction(rng)


def _two_lines(rng, i):
    # two rows of points drifting past each other in opposite directions
    upper = i % 2 == 1
    y = Fraction(2 if upper else 1, 3) + Fraction(rng.randint(-200, 200), GRID)
    m = rng.randint(200, MAX_PARAM)
    k = rng.randint(1, max(1, m // 50))
    quadrant = (1 if upper else 0) | (2 if rng.random() < 0.5 else 0)
    ux, uy = pythagorean_direction(m, k, quadrant, False)
    return _grid(rng), y, (ux, uy)


def _sample_point(kind, rng, i, centers) -> MovingPoint:
    if kind == "uniform":
        x, y, (ux, uy) = _grid(rng), _grid(rng), random_direction(rng)
    elif kind == "clustered":
        x, y, (ux, uy) = _clustered(rng, i, centers)
    else:
        x, y, (ux, uy) = _two_lines(rng, i)
    return MovingPoint(i, x, y, ux, uy)


def generate(kind: str, n: int, seed: int, window=DEFAULT_WINDOW) -> InstanceDocument:
    """Deterministic instance of the given family; degenerate tuples at the start are resampled."""
    if kind not in KINDS:
        raise PreconditionViolated(f"unknown generator {kind!r}; choose from {', '.join(KINDS)}")
    if n < 3:
        raise PreconditionViolated("need n >= 3")
    rng = random.Random(f"{kind}:{n}:{seed}")
    centers = [(_grid(rng, 0.2, 0.8), _grid(rng, 0.2, 0.8)) for _ in range(3)]
    points = [_sample_point(kind, rng, i, centers) for i in range(n)]
    t0 = Fraction(window[0])
    for _ in range(MAX_RETRIES):
        try:
            static_delaunay(points, t0)
            break
        except DegenerateAtStart as exc:
            bad = max(exc.tuple) if exc.tuple else rng.randrange(n)
            points[bad] = _sample_point(kind, rng, bad, centers)
    else:
        raise GenerationExhausted(f"no non-degenerate {kind} instance with n={n} after {MAX_RETRIES} resamples")
    provenance = {"generator": kind, "seed": seed, "n": n}
    if kind == "adversarial-two-lines":
        provenance["note"] = "heuristic family"
    return InstanceDocument(points, (Fraction(window[0]), Fraction(window[1])), provenance)

from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from kinetic_delaunay.errors import PreconditionViolated
from kinetic_delaunay.kernel import poly as P
from kinetic_delaunay.kinetic import simulate
from kinetic_delaunay.oracle import (
    compare_with_log,
    enumerate_all_events,
    level_of,
    reduced_replay,
    worker_count,
)

from conftest import mp, uniform

HALF = Fraction(1, 2)


def _float_level(points, quad, t):
    """Points strictly inside the float circumcircle, far from the boundary."""
    pos = {p.id: (float(p.x0) + float(p.ux) * t, float(p.y0) + float(p.uy) * t) for p in points}
    (ax, ay), (bx, by), (cx, cy) = (pos[i] for i in quad[:3])
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    rad = np.hypot(ax - ux, ay - uy)
    gaps = [np.hypot(x - ux, y - uy) - rad for i, (x, y) in pos.items() if i not in quad]
    if min(abs(g) for g in gaps) < 1e-7 * max(1.0, rad):
        return None
    return sum(g < 0 for g in gaps)


def test_kernel_quad_level_zero(kernel_quad):
    census = enumerate_all_events(kernel_quad, (-HALF, HALF))
    assert len(census.cocircularities) == 1
    ev = census.cocircularities[0]
    assert ev.level == 0 and ev.root.contains(0)


def test_center_point_raises_level(kernel_quad):
    pts = kernel_quad + [mp(4, 1, 0, Fraction(3, 5), Fraction(4, 5))]
    census = enumerate_all_events(pts, (-Fraction(1, 4), Fraction(1, 4)))
    ev = next(e for e in census.cocircularities if e.quadruple == (0, 1, 2, 3))
    assert ev.level == 1
    assert level_of((0, 1, 2, 3), ev.root, pts) == 1


@pytest.mark.parametrize("seed", range(3))
def test_levels_match_float_circles(seed):
    pts = uniform(9, seed)
    census = enumerate_all_events(pts, (0, 10))
    checked = 0
    for ev in census.cocircularities:
        want = _float_level(pts, ev.quadruple, float(ev.root))
        if want is not None:
            assert ev.level == want
            checked += 1
    assert checked >= 0.9 * len(census.cocircularities)


@pytest.mark.parametrize("seed", range(3))
def test_collinearity_sides_partition(seed):
    pts = uniform(9, seed)
    census = enumerate_all_events(pts, (0, 10))
    for ev in census.collinearities:
        assert ev.left + ev.right == len(pts) - 3
        a, m, b = ev.triple
        t = float(ev.root)
        (ax, ay), (mx, my), (bx, by) = [
            (float(p.x0) + float(p.ux) * t, float(p.y0) + float(p.uy) * t) for p in (pts[a], pts[m], pts[b])
        ]
        assert min(ax, bx) - 1e-9 <= mx <= max(ax, bx) + 1e-9


@pytest.mark.parametrize("seed", range(6))
def test_census_agrees_with_simulator(seed):
    pts = uniform(10, seed)
    census = enumerate_all_events(pts, (0, 10))
    report = compare_with_log(census, simulate(pts, 0, 10).log)
    assert report.ok, report.mismatches
    assert report.flips_simulated == report.flips_expected


def test_comparison_detects_missing_event():
    pts = uniform(10, 1)
    census = enumerate_all_events(pts, (0, 10))
    log = simulate(pts, 0, 10).log
    assert log.flips
    log.entries.remove(log.flips[0])
    assert not compare_with_log(census, log).ok


def test_event_count_bounds_per_tuple():
    census = enumerate_all_events(uniform(10, 2), (-100, 100))
    assert max(Counter(e.quadruple for e in census.cocircularities).values()) <= 3
    assert max(Counter(e.ids for e in census.collinearities).values()) <= 2
    for e in census.cocircularities:
        assert 1 <= e.index <= e.total <= 3
        assert e.extremal == (e.index in (1, 3))


def test_shallow_sets_are_nested():
    census = enumerate_all_events(uniform(10, 3), (0, 10))
    prev = []
    for k in range(7):
        cur = census.shallow(k)
        assert {id(e) for e in prev} <= {id(e) for e in cur}
        prev = cur
    assert len(census.shallow(6)) == len(census.cocircularities)


def test_events_sorted_by_time():
    census = enumerate_all_events(uniform(10, 4), (0, 10))
    roots = [e.root for e in census.cocircularities]
    assert all(P.compare_roots(a, b) <= 0 for a, b in zip(roots, roots[1:]))


def test_reduced_replay_matches_subset_census():
    pts = uniform(11, 5)
    excluded = {0, 3}
    log = reduced_replay(pts, excluded, (0, 10))
    sub = [p for p in pts if p.id not in excluded]
    assert compare_with_log(enumerate_all_events(sub, (0, 10)), log).ok


def test_oracle_size_cap():
    with pytest.raises(PreconditionViolated):
        enumerate_all_events(uniform(30, 0), (0, 1))


def test_census_serialisation_header():
    census = enumerate_all_events(uniform(8, 6), (0, 10))
    lines = census.to_lines()
    assert len(lines) == 1 + len(census.cocircularities) + len(census.collinearities)
    assert '"record": "header"' in lines[0]


def test_worker_count(monkeypatch):
    monkeypatch.setenv("KDT_WORKERS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("KDT_WORKERS", "junk")
    assert worker_count() == 1
    assert worker_count(0) == 1

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kinetic_delaunay.errors import DegenerateAtStart, TieDetected
from kinetic_delaunay.kinetic import (
    EventLog,
    brute_force_delaunay,
    build_initial,
    check,
    schedule,
    simulate,
    static_delaunay,
    validate,
)

from conftest import mp, uniform

HALF = Fraction(1, 2)


def test_four_points_with_interior_point():
    pts = [mp(0, 0, 0, 1, 0), mp(1, 4, 0, 1, 0), mp(2, 2, 3, 1, 0), mp(3, 2, 1, 1, 0)]
    tri = build_initial(pts, 0)
    assert tri.triangles() == {(0, 1, 3), (1, 2, 3), (0, 3, 2)}
    counts = schedule(tri).counts()
    assert counts["InCircle"] == 3
    assert counts["HullOrient"] == 3


def test_three_points_have_no_incircle_certificate():
    pts = [mp(0, 0, 0, 1, 0), mp(1, 4, 0, 0, 1), mp(2, 2, 3, 1, 0)]
    tri = build_initial(pts, 0)
    assert len(tri.triangles()) == 1
    assert schedule(tri).counts()["InCircle"] == 0


def test_kernel_quad_flips_once_at_zero(kernel_quad):
    res = simulate(kernel_quad, -HALF, HALF)
    assert len(res.log.flips) == 1
    flip = res.log.flips[0]
    assert flip.time.contains(0) and flip.time.is_exact
    assert set(flip.participants) == {0, 1, 2, 3}
    assert res.triangulation.triangles() == static_delaunay(kernel_quad, HALF)


def test_equal_directions_give_no_events():
    d = (Fraction(3, 5), Fraction(4, 5))
    pts = [mp(i, p.x0, p.y0, *d) for i, p in enumerate(uniform(12, 1))]
    res = simulate(pts, 0, 10)
    assert len(res.log) == 0
    assert res.triangulation.triangles() == static_delaunay(pts, 0)


def test_static_matches_brute_force_n32():
    pts = uniform(32, 5)
    for t in (Fraction(0), Fraction(7, 3)):
        assert static_delaunay(pts, t) == brute_force_delaunay(pts, t)


def test_collinear_start_rejected():
    pts = [mp(0, 0, 0, 1, 0), mp(1, 1, 1, 0, 1), mp(2, 2, 2, 1, 0), mp(3, 0, 5, 1, 0)]
    with pytest.raises(DegenerateAtStart):
        build_initial(pts, 0)


def test_validate_detects_corruption():
    pts = uniform(10, 2)
    tri = build_initial(pts, 0)
    assert validate(tri, 0)
    # flip an arbitrary internal edge: the result is a triangulation but not Delaunay
    p, q = next((u, v) for (u, v) in sorted(tri.apex) if (v, u) in tri.apex)
    a, b = tri.apex[(p, q)], tri.apex[(q, p)]
    tri.remove_triangle(p, q, a)
    tri.remove_triangle(q, p, b)
    tri.add_triangle(a, p, b)
    tri.add_triangle(b, q, a)
    assert not validate(tri, 0)
    assert check(tri, 0) is not None


@pytest.mark.parametrize("seed", range(5))
def test_end_state_matches_static(seed):
    pts = uniform(14, seed)
    res = simulate(pts, 0, 10)
    assert res.triangulation.triangles() == static_delaunay(pts, 10)
    assert validate(res.triangulation, 10)


def test_debug_mode_validates_every_step():
    pts = uniform(10, 4)
    res = simulate(pts, 0, 10, debug=True)
    assert res.triangulation.triangles() == static_delaunay(pts, 10)


def test_log_round_trip(tmp_path):
    res = simulate(uniform(12, 3), 0, 10)
    path = tmp_path / "log.jsonl"
    res.log.dump(path)
    back = EventLog.load(path)
    assert back.to_lines() == res.log.to_lines()
    assert [e.participants for e in back] == [e.participants for e in res.log]


def test_log_times_non_decreasing_and_replayable():
    res = simulate(uniform(14, 6), 0, 10)
    times = [e.time for e in res.log]
    assert all(float(a) <= float(b) for a, b in zip(times, times[1:]))
    tris = set(res.log.initial_triangles)
    for e in res.log:
        assert set(e.removed_triangles) <= tris
        tris -= set(e.removed_triangles)
        tris |= set(e.added_triangles)
    assert tris == res.triangulation.triangles()


def test_edge_timeline_matches_final_state():
    res = simulate(uniform(12, 8), 0, 10)
    final = res.triangulation.edges()
    for edge, spans in res.log.edge_timeline().items():
        open_end = spans[-1][1] is None
        assert open_end == (edge in final)


def _two_copies(quad):
    return quad + [mp(i + 4, p.x0 + 100, p.y0 + 37, p.ux, p.uy) for i, p in enumerate(quad)]


def test_simultaneous_events_raise_tie(kernel_quad):
    with pytest.raises(TieDetected):
        simulate(_two_copies(kernel_quad), -HALF, HALF)


def test_jitter_resolves_tie(kernel_quad):
    res = simulate(_two_copies(kernel_quad), -HALF, HALF, jitter=True)
    assert res.attempts > 1
    assert len(res.log.flips) >= 2
    assert res.triangulation.triangles() == static_delaunay(res.points, HALF)


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 12), st.integers(0, 10 ** 6))
def test_end_state_property(n, seed):
    pts = uniform(n, seed)
    res = simulate(pts, 0, 3, jitter=True, seed=seed)
    assert res.triangulation.triangles() == static_delaunay(res.points, 3)

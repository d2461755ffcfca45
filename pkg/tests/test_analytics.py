import math
import random
from dataclasses import replace
from fractions import Fraction
from itertools import combinations

import pytest

from kinetic_delaunay.analytics import (
    build_redblue,
    clarkson_shor_experiment,
    classify_events,
    color_classes,
    crossing_census,
    delaunay_at,
    envelope_at,
    exact_survival_probability,
    redblue_theorem_check,
    verify_crossing_lemmas,
    verify_double_crossings,
)
from kinetic_delaunay.analytics.classify import HULL_EVENT, RED_BLUE
from kinetic_delaunay.analytics.crossings import DOUBLE, SINGLE, CrossingRecord
from kinetic_delaunay.analytics.lemmas import (
    LEMMA4,
    check_crossing_order,
    check_edges_stay,
    check_red_blue_per_point,
    repeated_triple_census,
)
from kinetic_delaunay.analytics.sampling import enumerate_survival, sample_size
from kinetic_delaunay.errors import CollinearBase, PreconditionViolated
from kinetic_delaunay.kernel import incircle_at
from kinetic_delaunay.kernel import poly as P
from kinetic_delaunay.kinetic import simulate, static_delaunay
from kinetic_delaunay.oracle import enumerate_all_events

from conftest import load_fixture, mp, uniform


def _edges(tris):
    return {(min(a, b), max(a, b)) for t in tris for a, b in ((t[0], t[1]), (t[1], t[2]), (t[0], t[2]))}


def _left(pts, p, q, r, t):
    (ax, ay), (bx, by), (cx, cy) = pts[p].position(t), pts[q].position(t), pts[r].position(t)
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax) > 0


@pytest.fixture(scope="module")
def single_case():
    doc = load_fixture("single_crossings.jsonl")
    pts = doc.point_map()
    log = simulate(doc.points, *doc.window).log
    return pts, log, crossing_census(pts, log=log)


@pytest.fixture(scope="module")
def double_case():
    doc = load_fixture("double_crossing.jsonl")
    pts = doc.point_map()
    log = simulate(doc.points, *doc.window).log
    return pts, log, crossing_census(pts, log=log)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def _angular_diagonals(pts, quad, t):
    """Pairs opposite in the cyclic order around the float circumcentre."""
    xy = {i: tuple(float(c) for c in pts[i].position(t)) for i in quad}
    (ax, ay), (bx, by), (cx, cy) = (xy[i] for i in quad[:3])
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    order = sorted(quad, key=lambda i: math.atan2(xy[i][1] - uy, xy[i][0] - ux))
    return {tuple(sorted((order[0], order[2]))), tuple(sorted((order[1], order[3])))}


def test_kernel_quad_red_blue_pairs(kernel_quad):
    pts = {p.id: p for p in kernel_quad}
    root = P.exact_root(Fraction(0))
    classes = color_classes(pts, (0, 1, 2, 3), root)
    red_blue = {pair for pair, c in classes.items() if c == RED_BLUE}
    assert red_blue == {(0, 1), (2, 3)}


@pytest.mark.parametrize("seed", range(3))
def test_exactly_two_red_blue_pairs_are_the_diagonals(seed):
    pts = {p.id: p for p in uniform(8, seed)}
    census = enumerate_all_events(list(pts.values()), (0, 10))
    records = [r for r in classify_events(census, pts) if r.color_class]
    assert records
    for rec in records:
        assert len(rec.red_blue_pairs()) == 2
        assert set(rec.red_blue_pairs()) == _angular_diagonals(pts, rec.participants, float(rec.time))


def test_classify_log_matches_census():
    pts = {p.id: p for p in uniform(9, 4)}
    census = enumerate_all_events(list(pts.values()), (0, 10))
    log = simulate(list(pts.values()), 0, 10).log
    from_log = classify_events(log, pts)
    assert all(r.level == 0 for r in from_log if r.kind != HULL_EVENT)
    assert all(r.shallowness == 0 for r in from_log if r.kind == HULL_EVENT)
    from_census = classify_events(census, pts)
    assert sum(r.kind == HULL_EVENT for r in from_census) == len(log.hull_events)
    with pytest.raises(TypeError):
        classify_events([], pts)


# ---------------------------------------------------------------------------
# envelopes
# ---------------------------------------------------------------------------

def _four_point_oracle(pts, p, q, a, b, t):
    """pq is Delaunay in {p, q, a, b} unless a and b straddle it and b lies in circle(p, q, a)."""
    if _left(pts, p, q, a, t) == _left(pts, p, q, b, t):
        return True
    return incircle_at(pts[p], pts[q], pts[a], pts[b], t) <= 0


def test_four_point_envelope_matches_incircle():
    rng = random.Random(11)
    for trial in range(20):
        pts = {p.id: p for p in uniform(4, trial)}
        for _ in range(50):
            t = Fraction(rng.randint(0, 10 ** 4), 10 ** 3)
            for p, q in combinations(range(4), 2):
                a, b = [i for i in range(4) if i not in (p, q)]
                try:
                    want = _four_point_oracle(pts, p, q, a, b, t)
                except CollinearBase:
                    continue
                assert delaunay_at(pts, p, q, t) == want


def test_envelope_diverges_as_point_nears_segment():
    p, q = mp(0, 0, 0, 1, 0), mp(1, 2, 0, 1, 0)
    below = []
    above = []
    for k in range(1, 8):
        eps = Fraction(1, 10 ** k)
        pts = {0: p, 1: q, 2: mp(2, 1, -eps, 1, 0)}
        below.append(envelope_at(pts, 0, 1, 0).red[2])
        pts = {0: p, 1: q, 2: mp(2, 1, eps, 1, 0)}
        above.append(envelope_at(pts, 0, 1, 0).blue[2])
    assert all(x > y for x, y in zip(below, below[1:]))
    assert below[-1] < -10 ** 6
    assert all(x < y for x, y in zip(above, above[1:]))
    assert above[-1] > 10 ** 6


def test_blocker_inside_segment():
    pts = {0: mp(0, 0, 0, 1, 0), 1: mp(1, 2, 0, 1, 0), 2: mp(2, 1, 0, 0, 1)}
    s = envelope_at(pts, 0, 1, 0)
    assert s.blocker == 2 and not s.delaunay


@pytest.mark.parametrize("seed", range(3))
def test_envelope_gap_iff_static_edge(seed):
    pts = {p.id: p for p in uniform(10, seed)}
    rng = random.Random(seed)
    for _ in range(20):
        t = Fraction(rng.randint(0, 10 ** 4), 10 ** 3)
        edges = _edges(static_delaunay(list(pts.values()), t))
        for p, q in combinations(sorted(pts), 2):
            s = envelope_at(pts, p, q, t)
            assert s.delaunay == ((p, q) in edges)
            if (p, q) in edges and s.lower is not None and s.upper is not None:
                assert s.lower < s.upper


def test_arrangement_of_a_stable_edge():
    doc = load_fixture("single_crossings.jsonl")
    pts = doc.point_map()
    log = simulate(doc.points, *doc.window).log
    for edge, spans in log.edge_timeline().items():
        if spans == [(None, None)]:
            arr = build_redblue(edge, pts, doc.window)
            assert arr.delaunay_throughout()
            assert not arr.failures()
            break
    else:
        pytest.fail("fixture has no edge present over the whole window")


def test_arrangement_of_an_edge_that_leaves():
    doc = load_fixture("single_crossings.jsonl")
    pts = doc.point_map()
    log = simulate(doc.points, *doc.window).log
    edge = log.flips[0].participants[:2]
    arr = build_redblue(edge, pts, doc.window)
    assert not arr.delaunay_throughout()
    assert arr.failures()


# ---------------------------------------------------------------------------
# crossings
# ---------------------------------------------------------------------------

def test_fixture_crossing_counts(single_case, double_case):
    _, _, census = single_case
    assert (len(census.singles), len(census.doubles), len(census.degenerate)) == (3, 0, 1)
    _, _, census = double_case
    assert (len(census.singles), len(census.doubles), len(census.degenerate)) == (11, 1, 4)


@pytest.mark.parametrize("case", ["single_case", "double_case"])
def test_crossings_agree_with_static_builds(case, request):
    pts, _, census = request.getfixturevalue(case)
    assert census.crossings
    for c in census.crossings:
        p, q, r = c.triple
        e = (min(p, q), max(p, q))
        bounds = [c.t0, *c.hits, c.t1]
        for a, b in zip(bounds, bounds[1:]):
            t = P.rational_between(a, b)
            assert e not in _edges(static_delaunay(list(pts.values()), t))
            rest = [x for i, x in pts.items() if i != r]
            assert e in _edges(static_delaunay(rest, t))
        before = P.rational_between(c.t0, c.hits[0])
        after = P.rational_between(c.hits[0], c.hits[1] if c.kind == DOUBLE else c.t1)
        assert _left(pts, p, q, r, before) and not _left(pts, p, q, r, after)
        assert c.clockwise == (p, r) and c.counterclockwise == (q, r)


def test_double_crossing_returns(double_case):
    pts, _, census = double_case
    (c,) = census.doubles
    p, q, r = c.triple
    after = P.rational_between(c.hits[1], c.t1)
    assert _left(pts, p, q, r, after)


def test_lemmas_hold_on_fixtures(single_case, double_case):
    for pts, log, census in (single_case, double_case):
        report = verify_crossing_lemmas(census.crossings, None, pts, log=log)
        assert report.passed, report.to_lines()
        assert report[LEMMA4].checked == len(census.crossings)
        assert verify_double_crossings(census.crossings, pts).passed


def test_lemma_checks_reject_corrupted_records(single_case):
    pts, log, census = single_case
    c = census.singles[0]
    p, q, r = c.triple
    stranger = next(i for i in sorted(pts) if i not in (p, q, r))
    bogus = replace(c, crosser=stranger)
    assert not check_edges_stay([bogus], log).passed or not check_red_blue_per_point([bogus], pts).passed
    assert check_edges_stay(census.crossings, log).passed

    # a pair sharing the clockwise label whose intervals are out of order
    later = replace(
        c,
        edge=(p, stranger),
        t0=P.exact_root(Fraction(-1)),
        t1=P.exact_root(Fraction(100)),
        hits=(P.exact_root(Fraction(99)),),
    )
    res = check_crossing_order([c, later])
    assert res.checked == 1 and not res.passed


def test_repeated_triple_limit_enforced():
    t = P.exact_root
    mk = lambda e, r, a: CrossingRecord(e, r, t(Fraction(a)), t(Fraction(a + 1)), SINGLE, (t(Fraction(2 * a + 1, 2)),))
    recs = [mk((0, 1), 2, 0), mk((1, 0), 2, 2), mk((1, 0), 2, 4), mk((1, 0), 2, 6)]
    res = repeated_triple_census(recs)
    assert res.stats["max_pairs"] == 3
    assert not res.passed
    assert repeated_triple_census(recs[:3]).passed


def test_double_pair_check_is_not_vacuous(double_case):
    pts, _, census = double_case
    (c,) = census.doubles
    p, q = c.edge
    other = next(i for i in sorted(pts) if i not in (p, q, c.crosser))
    twin = replace(c, edge=(p, other))
    report = verify_double_crossings([c, twin], pts)
    assert report.pairs_checked == 1
    assert not report.passed


# ---------------------------------------------------------------------------
# trichotomy
# ---------------------------------------------------------------------------

def test_trichotomy_empty_removal_when_always_delaunay():
    doc = load_fixture("double_crossing.jsonl")
    pts = doc.point_map()
    log = simulate(doc.points, *doc.window).log
    edge = next(e for e, spans in log.edge_timeline().items() if spans == [(None, None)])
    rep = redblue_theorem_check(edge, (0, 1), 13, pts)
    assert rep.delaunay_throughout and rep.removal_set == () and rep.holds


def test_trichotomy_around_a_flip():
    doc = load_fixture("double_crossing.jsonl")
    pts = doc.point_map()
    log = simulate(doc.points, *doc.window).log
    flip = log.flips[0]
    lo = P.rational_between(P.exact_root(doc.window[0]), flip.time)
    hi = Fraction(math.ceil(float(flip.time)) + 1)
    rep = redblue_theorem_check(flip.participants[:2], (lo, hi), 13, pts)
    assert not rep.delaunay_throughout
    assert rep.holds
    assert len(rep.removal_set) <= 3 * 13


def test_trichotomy_preconditions():
    pts = {p.id: p for p in uniform(14, 0)}
    with pytest.raises(PreconditionViolated):
        redblue_theorem_check((0, 1), (0, 1), 12, pts)
    tris = static_delaunay(list(pts.values()), 0)
    non_edge = next(e for e in combinations(sorted(pts), 2) if e not in _edges(tris)
                    and not delaunay_at(pts, *e, 1))
    with pytest.raises(PreconditionViolated):
        redblue_theorem_check(non_edge, (0, 1), 13, pts)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def test_exact_survival_matches_enumeration():
    n, m = 8, sample_size(8, 2)
    for level in range(4):
        inner = list(range(4, 4 + level))
        assert exact_survival_probability(n, m, level) == pytest.approx(enumerate_survival(n, m, (0, 1, 2, 3), inner))


def test_full_sample_keeps_only_level_zero():
    pts = uniform(8, 1)
    rep = clarkson_shor_experiment(pts, 1, 50, (0, 10), 0)
    assert rep.m == 8
    for level, (_, freq, exact) in rep.per_level.items():
        assert freq == (1.0 if level == 0 else 0.0) == exact


def test_sampling_within_three_standard_errors():
    rep = clarkson_shor_experiment(uniform(10, 2), 2, 2000, (0, 10), 5)
    assert rep.events > 0
    assert rep.within_three_se, rep.to_json()


def test_sampling_is_seeded():
    a = clarkson_shor_experiment(uniform(9, 3), 2, 300, (0, 10), 7)
    b = clarkson_shor_experiment(uniform(9, 3), 2, 300, (0, 10), 7)
    assert a.to_json() == b.to_json()


@pytest.mark.parametrize("seed", range(3))
def test_removal_restores_delaunay_without_deep_disc(seed):
    pts = {p.id: p for p in uniform(24, seed)}
    log = simulate(list(pts.values()), 0, 3).log
    entries = list(log)
    for i, flip in enumerate(entries[:8]):
        if flip.kind != "flip":
            continue
        prev = entries[i - 1].time if i else P.exact_root(Fraction(0))
        lo = P.rational_between(prev, flip.time)
        rep = redblue_theorem_check(flip.participants[:2], (lo, Fraction(3)), 13, pts)
        assert not rep.delaunay_throughout
        if not rep.deep_disc:
            assert rep.reduced_delaunay and rep.size_ok, rep.to_json()


def test_edge_with_everything_on_one_side():
    # pq stays a hull edge, so nothing needs removing
    k = 13
    pts = {0: mp(0, 0, 0, 1, 0), 1: mp(1, 1, 0, 1, 0)}
    rng = random.Random(1)
    for i in range(2, 3 * k + 2):
        pts[i] = mp(i, Fraction(rng.randint(0, 10 ** 4), 10 ** 4), 5 + Fraction(rng.randint(0, 10 ** 4), 10 ** 4), 1, 0)
    rep = redblue_theorem_check((0, 1), (0, 5), k, pts)
    assert rep.delaunay_throughout and rep.removal_set == () and rep.condition_iii

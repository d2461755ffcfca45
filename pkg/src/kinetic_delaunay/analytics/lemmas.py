"""Structural checks on detected Delaunay crossings.

Each check returns a :class:`LemmaResult` with the number of instances examined
and a list of counterexample payloads; an empty list means the property held.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Optional, Sequence

from ..kernel import poly as P
from ..kernel.catalog import RootCatalog
from ..kernel.poly import IsolatedRoot
from ..kernel.predicates import SegmentPosition
from ..kernel.timepoly import segment_position_at_root, side_at_root
from ..kinetic.log import EventLog
from ..kinetic.simulator import simulate
from ..oracle import GlobalEventCensus
from .crossings import DOUBLE, SINGLE, CrossingRecord
from .envelope import _crossing_direction

LEMMA4 = "edges-stay-delaunay"
LEMMA6 = "red-blue-cocircularity-per-point"
LEMMA8 = "order-of-crossings"
MUST_CROSS = "exit-trichotomy"
PAIR_CENSUS = "repeated-triples"

# the proof allows one triple per (pair, type); the checked bound is the looser one
REPEATED_TRIPLE_LIMIT = 2


@dataclass
class LemmaResult:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "lemma": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "violations": self.violations,
            "stats": self.stats,
        }


@dataclass
class LemmaReport:
    results: dict = field(default_factory=dict)

    def add(self, result: LemmaResult) -> None:
        self.results[result.name] = result

    def __getitem__(self, name: str) -> LemmaResult:
        return self.results[name]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def to_lines(self) -> list[str]:
        head = {"record": "header", "passed": self.passed, "lemmas": sorted(self.results)}
        lines = [json.dumps(head, sort_keys=True)]
        for name in sorted(self.results):
            d = self.results[name].to_json()
            d["record"] = "lemma"
            lines.append(json.dumps(d, sort_keys=True))
        return lines


def _edge(u, v):
    return (u, v) if u < v else (v, u)


def _le(a: Optional[IsolatedRoot], b: Optional[IsolatedRoot], none_is_low: bool) -> bool:
    """``a <= b`` where ``None`` is the window start (``none_is_low``) or end."""
    if a is None:
        return none_is_low
    if b is None:
        return not none_is_low
    return P.compare_roots(a, b) <= 0


def _in_closed(r: IsolatedRoot, lo: IsolatedRoot, hi: IsolatedRoot) -> bool:
    return P.compare_roots(lo, r) <= 0 <= P.compare_roots(hi, r)


def _crossing_payload(c: CrossingRecord) -> dict:
    return {"edge": list(c.edge), "crosser": c.crosser, "t0": float(c.t0), "t1": float(c.t1), "kind": c.kind}


def _cocircularities(census: Optional[GlobalEventCensus], catalog: RootCatalog, quad) -> list[IsolatedRoot]:
    quad = tuple(sorted(quad))
    if census is not None:
        return [e.root for e in census.cocircularities if e.quadruple == quad]
    return catalog.roots(quad)


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------

def check_edges_stay(crossings: Sequence[CrossingRecord], log: EventLog) -> LemmaResult:
    """``pr`` and ``rq`` are present in DT(P) over the whole closed interval of each crossing."""
    res = LemmaResult(LEMMA4)
    timeline = log.edge_timeline()
    for c in crossings:
        res.checked += 1
        for x in c.edge:
            spans = timeline.get(_edge(x, c.crosser), [])
            covered = any(_le(s, c.t0, True) and _le(c.t1, e, False) for s, e in spans)
            if not covered:
                res.violations.append({"crossing": _crossing_payload(c), "missing_edge": sorted((x, c.crosser))})
    return res


def check_red_blue_per_point(crossings, points, census=None, catalog=None) -> LemmaResult:
    """Every other point forms a co-circularity with ``p, q, r`` during a single crossing, red-blue w.r.t. ``pq``."""
    res = LemmaResult(LEMMA6)
    cat = catalog if catalog is not None else RootCatalog(points)
    for c in crossings:
        if c.kind != SINGLE:
            continue
        p, q, r = c.triple
        for s in points:
            if s in (p, q, r):
                continue
            res.checked += 1
            ok = False
            for root in _cocircularities(census, cat, (p, q, r, s)):
                if not _in_closed(root, c.t0, c.t1):
                    continue
                sr = side_at_root(points[p], points[q], points[r], root)
                ss = side_at_root(points[p], points[q], points[s], root)
                if sr * ss < 0:
                    ok = True
                    break
            if not ok:
                res.violations.append({"crossing": _crossing_payload(c), "point": s})
    return res


def check_crossing_order(crossings: Sequence[CrossingRecord]) -> LemmaResult:
    """Crossings sharing a clockwise (or counterclockwise) label are ordered alike by hit, start and end."""
    res = LemmaResult(LEMMA8)
    groups = defaultdict(list)
    for c in crossings:
        if c.kind != SINGLE:
            continue
        groups[("cw",) + c.clockwise].append(c)
        groups[("ccw",) + c.counterclockwise].append(c)
    for key, group in sorted(groups.items()):
        for x, y in combinations(group, 2):
            res.checked += 1
            if P.compare_roots(x.hits[0], y.hits[0]) > 0:
                x, y = y, x
            if not (P.compare_roots(x.t0, y.t0) < 0 and P.compare_roots(x.t1, y.t1) < 0):
                res.violations.append({"label": list(key), "first": _crossing_payload(x), "second": _crossing_payload(y)})
    return res


def _segment_crossings(points, catalog, p, q, x, lo, hi, direction, lo_open, hi_open) -> list[IsolatedRoot]:
    """Times in the window at which ``x`` passes through segment ``pq`` in ``direction``."""
    out = []
    for root in catalog.roots_in((p, q, x), lo, hi):
        if lo_open and P.compare_roots(root, lo) == 0:
            continue
        if hi_open and P.compare_roots(root, hi) == 0:
            continue
        if segment_position_at_root(points[p], points[q], points[x], root) is not SegmentPosition.INSIDE_SEGMENT:
            continue
        if _crossing_direction(points, p, q, x, root) == direction:
            out.append(root)
    return out


def _red_blue_event(points, census, catalog, p, q, a, b, lo, hi, lo_open, hi_open) -> Optional[IsolatedRoot]:
    for root in _cocircularities(census, catalog, (p, q, a, b)):
        c_lo, c_hi = P.compare_roots(root, lo), P.compare_roots(root, hi)
        if c_lo < 0 or (lo_open and c_lo == 0) or c_hi > 0 or (hi_open and c_hi == 0):
            continue
        sa = side_at_root(points[p], points[q], points[a], root)
        sb = side_at_root(points[p], points[q], points[b], root)
        if sa * sb < 0:
            return root
    return None


def check_exit_trichotomy(log: EventLog, points, census=None, catalog=None) -> LemmaResult:
    """After a flip removes ``pq`` and before it returns, a violator crosses it or a red-blue co-circularity occurs.

    The mirrored statement (reverse time from the flip that brings ``pq`` back)
    is checked as well.
    """
    res = LemmaResult(MUST_CROSS)
    cat = catalog if catalog is not None else RootCatalog(points)
    timeline = log.edge_timeline()
    for entry in log.flips:
        p, q, x, y = entry.participants
        # forward: pq removed at entry.time
        spans = timeline[_edge(p, q)]
        nxt = [s for s, _ in spans if s is not None and P.compare_roots(s, entry.time) > 0]
        if nxt:
            t0 = entry.time
            t1 = next(s for s in nxt if all(P.compare_roots(s, o) <= 0 for o in nxt))
            a, b = (x, y) if side_at_root(points[p], points[q], points[x], t0) < 0 else (y, x)
            res.checked += 1
            hit = (
                _segment_crossings(points, cat, p, q, a, t0, t1, +1, True, False)
                or _segment_crossings(points, cat, p, q, b, t0, t1, -1, True, False)
                or _red_blue_event(points, census, cat, p, q, a, b, t0, t1, True, False)
            )
            if not hit:
                res.violations.append({"edge": [p, q], "violators": [a, b], "t0": float(t0), "t1": float(t1), "direction": "forward"})
        # backward: xy added at entry.time, violated before by p and q
        spans = timeline[_edge(x, y)]
        prev = [e for _, e in spans if e is not None and P.compare_roots(e, entry.time) < 0]
        if prev:
            t1 = entry.time
            t0 = next(e for e in prev if all(P.compare_roots(e, o) >= 0 for o in prev))
            a, b = (p, q) if side_at_root(points[x], points[y], points[p], t1) < 0 else (q, p)
            res.checked += 1
            hit = (
                _segment_crossings(points, cat, x, y, a, t0, t1, -1, False, True)
                or _segment_crossings(points, cat, x, y, b, t0, t1, +1, False, True)
                or _red_blue_event(points, census, cat, x, y, a, b, t0, t1, False, True)
            )
            if not hit:
                res.violations.append({"edge": [x, y], "violators": [a, b], "t0": float(t0), "t1": float(t1), "direction": "backward"})
    return res


def repeated_triple_census(crossings: Sequence[CrossingRecord], limit: int = REPEATED_TRIPLE_LIMIT) -> LemmaResult:
    """Count pairs of single crossings on a common triple, per ordered pair and order type.

    Types: ``(pq,r)`` with ``(qp,r)``; with ``(rq,p)``; with ``(pr,q)``.  Each
    distinct unordered pair of crossings is counted once per key.
    """
    res = LemmaResult(PAIR_CENSUS)
    singles = [c for c in crossings if c.kind == SINGLE]
    by_triple = defaultdict(list)
    for i, c in enumerate(singles):
        by_triple[c.triple].append(i)
    pairs = defaultdict(set)
    triples = defaultdict(set)
    for i, c in enumerate(singles):
        p, q, r = c.triple
        for kind, partner in (("i", (q, p, r)), ("ii", (r, q, p)), ("iii", (p, r, q))):
            for j in by_triple.get(partner, ()):
                if j != i:
                    pairs[(p, q, kind)].add(frozenset((i, j)))
                    triples[(p, q, kind)].add(r)
    res.checked = len(pairs)
    res.stats = {
        "max_pairs": max((len(v) for v in pairs.values()), default=0),
        "max_triples": max((len(v) for v in triples.values()), default=0),
        "keys": len(pairs),
    }
    for key, v in sorted(pairs.items()):
        if len(v) > limit:
            res.violations.append({"pair": list(key[:2]), "type": key[2], "count": len(v)})
    return res


def verify_crossing_lemmas(
    crossings: Sequence[CrossingRecord],
    census: Optional[GlobalEventCensus],
    points,
    log: Optional[EventLog] = None,
    catalog: Optional[RootCatalog] = None,
) -> LemmaReport:
    pts = dict(points) if isinstance(points, Mapping) else {x.id: x for x in points}
    cat = catalog if catalog is not None else RootCatalog(pts)
    if log is None:
        if census is None:
            raise ValueError("need an event log or a census to know the window")
        lo, hi = census.window
        log = simulate(list(pts.values()), lo, hi).log
    report = LemmaReport()
    report.add(check_edges_stay(crossings, log))
    report.add(check_red_blue_per_point(crossings, pts, census, cat))
    report.add(check_crossing_order(crossings))
    report.add(check_exit_trichotomy(log, pts, census, cat))
    report.add(repeated_triple_census(crossings))
    return report


# ---------------------------------------------------------------------------
# double crossings
# ---------------------------------------------------------------------------

@dataclass
class DoubleReport:
    count: int
    n: int
    pairs_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def n_squared(self) -> int:
        return self.n * self.n

    @property
    def ratio(self) -> float:
        return self.count / self.n_squared if self.n else 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "double_crossings": self.count,
            "n": self.n,
            "n_squared": self.n_squared,
            "ratio": self.ratio,
            "pairs_checked": self.pairs_checked,
            "passed": self.passed,
            "violations": self.violations,
        }


def _shared_endpoint(x: CrossingRecord, y: CrossingRecord) -> Optional[tuple]:
    """``(p, q, a)`` when both edges leave (or both enter) a common ``p``."""
    if x.edge[0] == y.edge[0] and x.edge[1] != y.edge[1]:
        return x.edge[0], x.edge[1], y.edge[1]
    if x.edge[1] == y.edge[1] and x.edge[0] != y.edge[0]:
        return x.edge[1], x.edge[0], y.edge[0]
    return None


def _check_double_pair(points, catalog, x: CrossingRecord, y: CrossingRecord) -> list[str]:
    p, q, a = _shared_endpoint(x, y)
    r = x.crosser
    e1, e2 = x.edge, y.edge
    pts = points

    def side(edge, s, root):
        return side_at_root(pts[edge[0]], pts[edge[1]], pts[s], root)

    failed = []
    if any(side(e1, a, h) != 1 for h in x.hits):
        failed.append("i")
    if any(side(e2, q, h) != -1 for h in y.hits):
        failed.append("ii")
    outside_j = []
    for root in catalog.roots((p, q, a, r)):
        if not _in_closed(root, x.t0, x.t1) or _in_closed(root, y.t0, y.t1):
            continue
        if side(e1, r, root) == -1 and side(e1, a, root) == 1:
            outside_j.append(root)
    if len(outside_j) < 2:
        failed.append("iii")
    before = any(P.compare_roots(root, y.t0) < 0 for root in outside_j)
    after = any(P.compare_roots(root, y.t1) > 0 for root in outside_j)
    nested = P.compare_roots(x.t0, y.t0) < 0 and P.compare_roots(y.t1, x.t1) < 0
    if not (before and after and nested):
        failed.append("iv")
    return failed


def verify_double_crossings(crossings: Sequence[CrossingRecord], points, catalog: Optional[RootCatalog] = None) -> DoubleReport:
    """Pairwise structure of double crossings by one point of edges sharing an endpoint."""
    pts = dict(points) if isinstance(points, Mapping) else {x.id: x for x in points}
    cat = catalog if catalog is not None else RootCatalog(pts)
    doubles = [c for c in crossings if c.kind == DOUBLE]
    report = DoubleReport(len(doubles), len(pts))
    for x, y in combinations(doubles, 2):
        if x.crosser != y.crosser or _shared_endpoint(x, y) is None:
            continue
        if P.compare_roots(x.hits[0], y.hits[0]) > 0:
            x, y = y, x
        report.pairs_checked += 1
        failed = _check_double_pair(pts, cat, x, y)
        if failed:
            report.violations.append({"first": _crossing_payload(x), "second": _crossing_payload(y), "failed": failed})
    return report

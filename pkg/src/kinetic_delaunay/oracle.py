"""Brute-force census of every co-circularity and collinearity in a time window.

Independent of the kinetic engine: every quadruple and triple is examined,
levels are counted point by point, and the result can be compared against a
simulation log.
"""

from __future__ import annotations

import functools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import DegenerateMotion, GeneralPositionViolation, InstanceDegenerate, PreconditionViolated
from .kernel import poly as P
from .kernel.catalog import RootCatalog
from .kernel.motion import MovingPoint, as_fraction
from .kernel.poly import IsolatedRoot
from .kernel.predicates import SegmentPosition
from .kernel.timepoly import (
    incircle_cofactors,
    incircle_from_cofactors,
    orient_cofactors,
    orient_from_cofactors,
    orient_poly,
    segment_position_at_root,
)
from .kinetic.log import EventLog, encode_rational, encode_root
from .kinetic.simulator import simulate

DEFAULT_MAX_N = 24


@dataclass(frozen=True)
class CocircularityEvent:
    quadruple: tuple  # sorted ids
    root: IsolatedRoot
    level: int
    index: int  # 1-based rank among all real roots of the quadruple
    total: int  # number of real roots of the quadruple over all time

    @property
    def extremal(self) -> bool:
        return self.index in (1, 3)

    def to_json(self) -> dict:
        return {
            "kind": "cocircularity",
            "participants": list(self.quadruple),
            "time": encode_root(self.root),
            "level": self.level,
            "index": self.index,
            "total": self.total,
        }


@dataclass(frozen=True)
class CollinearityEvent:
    triple: tuple  # (a, m, b) with m between a and b
    root: IsolatedRoot
    left: int  # points strictly left of the line a -> b
    right: int

    @property
    def shallowness(self) -> int:
        return min(self.left, self.right)

    @property
    def ids(self) -> tuple:
        return tuple(sorted(self.triple))

    def to_json(self) -> dict:
        return {
            "kind": "collinearity",
            "participants": list(self.triple),
            "time": encode_root(self.root),
            "left": self.left,
            "right": self.right,
            "shallowness": self.shallowness,
        }


@dataclass
class GlobalEventCensus:
    window: tuple
    cocircularities: list = field(default_factory=list)
    collinearities: list = field(default_factory=list)

    def shallow(self, k: int) -> list[CocircularityEvent]:
        return [e for e in self.cocircularities if e.level <= k]

    def level_zero(self) -> list[CocircularityEvent]:
        return self.shallow(0)

    def hull_collinearities(self) -> list[CollinearityEvent]:
        return [e for e in self.collinearities if e.shallowness == 0]

    def to_lines(self) -> list[str]:
        head = {
            "record": "header",
            "window": [encode_rational(self.window[0]), encode_rational(self.window[1])],
            "cocircularities": len(self.cocircularities),
            "collinearities": len(self.collinearities),
        }
        lines = [json.dumps(head, sort_keys=True)]
        events = [(e.root, 0, e) for e in self.cocircularities] + [(e.root, 1, e) for e in self.collinearities]
        events.sort(key=functools.cmp_to_key(_cmp_entries))
        for _, _, e in events:
            d = e.to_json()
            d["record"] = "event"
            lines.append(json.dumps(d, sort_keys=True))
        return lines

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("\n".join(self.to_lines()) + "\n")


def _cmp_entries(a, b) -> int:
    c = P.compare_roots(a[0], b[0])
    if c:
        return c
    ka = (a[1], tuple(a[2].to_json()["participants"]))
    kb = (b[1], tuple(b[2].to_json()["participants"]))
    return (ka > kb) - (ka < kb)


def _cmp_events(a, b) -> int:
    return _cmp_entries((a.root, 0, a), (b.root, 0, b))


def sort_by_time(events: Iterable) -> list:
    return sorted(events, key=functools.cmp_to_key(_cmp_events))


# ---------------------------------------------------------------------------
# levels
# ---------------------------------------------------------------------------

def _base_triple(pts, quad, root):
    for trip in combinations(quad, 3):
        o = P.sign_at_root(orient_poly(*(pts[i] for i in trip)), root)
        if o != 0:
            return trip, o
    raise GeneralPositionViolation(f"quadruple {quad} is degenerate at {root!r}")


def inside_counts(points: dict, quad: Sequence[int], root: IsolatedRoot, others: Sequence[int]) -> tuple[list[int], list[int]]:
    """Ids of ``others`` strictly inside / outside the circle through ``quad`` at ``root``."""
    trip, o = _base_triple(points, quad, root)
    cof = incircle_cofactors(*(points[i] for i in trip))
    polys = [incircle_from_cofactors(cof, points[s]) for s in others]
    _, signs = P.certify_interval(root, polys)
    inside, outside = [], []
    for s, sg in zip(others, signs):
        if sg == 0:
            raise GeneralPositionViolation(f"five points {tuple(quad) + (s,)} co-circular at {root!r}")
        (inside if sg * o > 0 else outside).append(s)
    return inside, outside


def level_of(quadruple: Sequence[int], root: IsolatedRoot, points) -> int:
    """Number of points strictly inside the common circle of ``quadruple`` at ``root``.

    The four co-circular points themselves lie on the circle and are not counted.
    """
    pts = points if isinstance(points, dict) else {p.id: p for p in points}
    others = [i for i in pts if i not in quadruple]
    inside, _ = inside_counts(pts, quadruple, root, others)
    return len(inside)


def side_counts(points: dict, a: int, b: int, root: IsolatedRoot, others: Sequence[int]) -> tuple[list[int], list[int]]:
    """Ids of ``others`` strictly left / right of the line ``a -> b`` at ``root``."""
    cof = orient_cofactors(points[a], points[b])
    polys = [orient_from_cofactors(cof, points[s]) for s in others]
    _, signs = P.certify_interval(root, polys)
    left, right = [], []
    for s, sg in zip(others, signs):
        if sg == 0:
            raise GeneralPositionViolation(f"four points {(a, b, s)}+ collinear at {root!r}")
        (left if sg > 0 else right).append(s)
    return left, right


def _middle(pts, triple, root):
    for m in triple:
        x, y = [v for v in triple if v != m]
        if segment_position_at_root(pts[x], pts[y], pts[m], root) is SegmentPosition.INSIDE_SEGMENT:
            return x, m, y
    raise GeneralPositionViolation(f"collinearity {triple} at {root!r} has coincident points")


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _quad_events(pts, catalog, quad, lo, hi):
    out = []
    roots = catalog.roots(quad)
    others = [i for i in pts if i not in quad]
    for idx, r in enumerate(roots):
        if P.compare_to_rational(r, lo) < 0 or P.compare_to_rational(r, hi) > 0:
            continue
        inside, _ = inside_counts(pts, quad, r, others)
        out.append(CocircularityEvent(quad, r, len(inside), idx + 1, len(roots)))
    return out


def _triple_events(pts, catalog, triple, lo, hi):
    out = []
    others = [i for i in pts if i not in triple]
    for r in catalog.roots_in(triple, lo, hi):
        a, m, b = _middle(pts, triple, r)
        left, right = side_counts(pts, a, b, r, others)
        out.append(CollinearityEvent((a, m, b), r, len(left), len(right)))
    return out


def _census_chunk(args):
    points, quads, triples, lo, hi = args
    pts = {p.id: p for p in points}
    catalog = RootCatalog(pts)
    co, cl = [], []
    try:
        for q in quads:
            co.extend(_quad_events(pts, catalog, q, lo, hi))
        for t in triples:
            cl.extend(_triple_events(pts, catalog, t, lo, hi))
    except DegenerateMotion as exc:
        raise InstanceDegenerate(str(exc)) from exc
    return co, cl


def worker_count(workers: Optional[int] = None) -> int:
    if workers is not None:
        return max(1, workers)
    try:
        return max(1, int(os.environ.get("KDT_WORKERS", "1")))
    except ValueError:
        return 1


def enumerate_all_events(points: Sequence[MovingPoint], window, workers: Optional[int] = None, max_n: int = DEFAULT_MAX_N) -> GlobalEventCensus:
    """Every co-circularity and collinearity of the instance inside the closed window."""
    points = list(points)
    if len(points) > max_n:
        raise PreconditionViolated(f"oracle capped at n <= {max_n}; pass max_n to override")
    lo, hi = (as_fraction(window[0]), as_fraction(window[1]))
    ids = sorted(p.id for p in points)
    quads = list(combinations(ids, 4))
    triples = list(combinations(ids, 3))
    nw = worker_count(workers)
    if nw == 1 or len(quads) < 200:
        co, cl = _census_chunk((points, quads, triples, lo, hi))
    else:
        jobs = [(points, quads[i::nw], triples[i::nw], lo, hi) for i in range(nw)]
        co, cl = [], []
        with ProcessPoolExecutor(nw) as ex:
            for a, b in ex.map(_census_chunk, jobs):
                co.extend(a)
                cl.extend(b)
    return GlobalEventCensus((lo, hi), sort_by_time(co), sort_by_time(cl))


def reduced_replay(points: Sequence[MovingPoint], excluded: Iterable[int], window, jitter: bool = False) -> EventLog:
    """Kinetic simulation of the instance without the ``excluded`` ids."""
    excluded = set(excluded)
    kept = [p for p in points if p.id not in excluded]
    if len(kept) < 3:
        raise PreconditionViolated("fewer than three points remain")
    return simulate(kept, window[0], window[1], jitter=jitter).log


# ---------------------------------------------------------------------------
# agreement with the simulator
# ---------------------------------------------------------------------------

@dataclass
class AgreementReport:
    flips_simulated: int
    flips_expected: int
    hull_simulated: int
    hull_expected: int
    mismatches: list

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _match(sim: list, expected: list, label: str) -> list:
    """Pair items of two time-sorted lists ``(root, id-set)``; report leftovers."""
    problems = []
    pool = list(expected)
    for root, ids in sim:
        hit = None
        for j, (r2, ids2) in enumerate(pool):
            if ids2 == ids and P.compare_roots(root, r2) == 0:
                hit = j
                break
        if hit is None:
            problems.append(f"{label}: simulated event {sorted(ids)} at {root!r} not in census")
        else:
            pool.pop(hit)
    for r2, ids2 in pool:
        problems.append(f"{label}: census event {sorted(ids2)} at {r2!r} not simulated")
    return problems


def compare_with_log(census: GlobalEventCensus, log: EventLog) -> AgreementReport:
    """Flips must equal level-0 co-circularities and hull events shallowness-0 collinearities."""
    sim_flips = [(e.time, frozenset(e.participants)) for e in log.flips]
    exp_flips = [(e.root, frozenset(e.quadruple)) for e in census.level_zero()]
    sim_hull = [(e.time, frozenset(e.participants)) for e in log.hull_events]
    exp_hull = [(e.root, frozenset(e.triple)) for e in census.hull_collinearities()]
    problems = _match(sim_flips, exp_flips, "flip") + _match(sim_hull, exp_hull, "hull")
    return AgreementReport(len(sim_flips), len(exp_flips), len(sim_hull), len(exp_hull), problems)

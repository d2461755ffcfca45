"""Certificate scheduling and event processing for the kinetic Delaunay triangulation.

Certificates:

* one per undirected edge: an in-circle test if the edge is internal, or an
  orientation test of the hull edge against its apex (an interior point
  leaving through that edge);
* one per hull vertex: the orientation of the vertex and its two hull
  neighbours.

Failure times are the first root of the certificate polynomial strictly after
``now``.  A queue entry is stale once its key maps to a newer certificate.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..errors import (
    DegenerateAtStart,
    DegenerateMotion,
    GeneralPositionViolation,
    InstanceDegenerate,
    TieDetected,
    ValidationFailure,
)
from ..kernel import poly as P
from ..kernel.catalog import RootCatalog
from ..kernel.motion import MovingPoint, as_fraction
from ..kernel.poly import IsolatedRoot
from ..kernel.predicates import SegmentPosition
from ..kernel.timepoly import orient_poly, segment_position_at_root
from .log import FLIP, HULL, EventLog, LogEntry
from .static import canonical_triangle, check_general_position, delaunay_triangles, slice_at
from .triangulation import KineticTriangulation, check

EDGE = "edge"
VERTEX = "vertex"


def _edge(u, v):
    return (u, v) if u < v else (v, u)


class _Time:
    """Heap key ordering isolated roots exactly."""

    __slots__ = ("root",)

    def __init__(self, root: IsolatedRoot):
        self.root = root

    def __lt__(self, other: _Time) -> bool:
        return P.compare_roots(self.root, other.root) < 0

    def __eq__(self, other) -> bool:
        return P.compare_roots(self.root, other.root) == 0


@dataclass
class Certificate:
    key: tuple
    kind: str  # "InCircle", "HullEdge" or "HullOrient"
    participants: tuple
    failure: Optional[IsolatedRoot]


@dataclass
class CertificateQueue:
    catalog: RootCatalog
    heap: list = field(default_factory=list)
    current: dict = field(default_factory=dict)
    _seq: int = 0

    def push(self, cert: Certificate) -> None:
        self.current[cert.key] = cert
        if cert.failure is not None:
            self._seq += 1
            heapq.heappush(self.heap, (_Time(cert.failure), self._seq, cert))

    def drop(self, key) -> None:
        self.current.pop(key, None)

    def _valid(self, cert: Certificate) -> bool:
        return self.current.get(cert.key) is cert

    def peek(self) -> Optional[Certificate]:
        while self.heap and not self._valid(self.heap[0][2]):
            heapq.heappop(self.heap)
        return self.heap[0][2] if self.heap else None

    def pop(self) -> Optional[Certificate]:
        cert = self.peek()
        if cert is not None:
            heapq.heappop(self.heap)
        return cert

    def certificates(self) -> list[Certificate]:
        return list(self.current.values())

    def counts(self) -> dict:
        out = {"InCircle": 0, "HullEdge": 0, "HullOrient": 0}
        for c in self.current.values():
            out[c.kind] += 1
        return out


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def build_initial(points: Sequence[MovingPoint], t) -> KineticTriangulation:
    """Delaunay triangulation of the slice at rational ``t``."""
    t = as_fraction(t)
    points = list(points)
    ids = [p.id for p in points]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate point ids")
    check_general_position(points, t)
    h = slice_at(points, t)
    tris = delaunay_triangles(h)
    check_general_position(points, t, tris)
    return KineticTriangulation.from_triangles(points, tris, P.exact_root(t))


def _next_root(roots, now: IsolatedRoot, participants, event_set) -> Optional[IsolatedRoot]:
    for r in roots:
        if r.hi < now.lo:
            continue
        c = P.compare_roots(r, now)
        if c > 0:
            return r
        if c == 0 and event_set is not None and frozenset(participants) != event_set:
            raise TieDetected(
                f"tuple {tuple(participants)} degenerates at the event time {now!r}",
                tuple(participants),
                tuple(sorted(event_set)),
            )
    return None


def _roots(catalog: RootCatalog, ids):
    try:
        return catalog.roots(ids)
    except DegenerateMotion as exc:
        raise InstanceDegenerate(str(exc)) from exc


def _edge_certificate(tri, catalog, u, v, event_set) -> Optional[Certificate]:
    key = (EDGE,) + _edge(u, v)
    if (u, v) not in tri.apex:
        u, v = v, u
    if (u, v) not in tri.apex:
        return None
    if (v, u) in tri.apex:
        if u > v:
            u, v = v, u
        parts = (u, v, tri.apex[(u, v)], tri.apex[(v, u)])
        kind = "InCircle"
    else:
        parts = (u, v, tri.apex[(u, v)])
        kind = "HullEdge"
    failure = _next_root(_roots(catalog, parts), tri.now, parts, event_set)
    return Certificate(key, kind, parts, failure)


def _vertex_certificate(tri, catalog, p, event_set) -> Optional[Certificate]:
    if p not in tri.hull_next:
        return None
    parts = (tri.hull_prev[p], p, tri.hull_next[p])
    failure = _next_root(_roots(catalog, parts), tri.now, parts, event_set)
    return Certificate((VERTEX, p), "HullOrient", parts, failure)


def _refresh(tri, queue: CertificateQueue, edges=(), vertices=(), event_set=None) -> None:
    for u, v in edges:
        key = (EDGE,) + _edge(u, v)
        queue.drop(key)
        cert = _edge_certificate(tri, queue.catalog, u, v, event_set)
        if cert is not None:
            queue.push(cert)
    for p in vertices:
        key = (VERTEX, p)
        queue.drop(key)
        cert = _vertex_certificate(tri, queue.catalog, p, event_set)
        if cert is not None:
            queue.push(cert)


def schedule(tri: KineticTriangulation, catalog: Optional[RootCatalog] = None) -> CertificateQueue:
    """Certificates for every edge and hull vertex, with failure times after ``tri.now``."""
    queue = CertificateQueue(catalog if catalog is not None else RootCatalog(tri.points))
    _refresh(tri, queue, edges=sorted(tri.edges()), vertices=sorted(tri.hull_next))
    return queue


# ---------------------------------------------------------------------------
# event processing
# ---------------------------------------------------------------------------

def _require_simple(cert: Certificate, root: IsolatedRoot) -> None:
    if root.multiplicity % 2 == 0:
        raise GeneralPositionViolation(
            f"tangential event (multiplicity {root.multiplicity}) of {cert.participants} at {root!r}"
        )


def _flip(tri, queue, cert, root) -> LogEntry:
    p, q, a, b = cert.participants
    if tri.apex.get((p, q)) != a or tri.apex.get((q, p)) != b:
        raise ValidationFailure(f"stale in-circle certificate {cert.participants}")
    tri.remove_triangle(p, q, a)
    tri.remove_triangle(q, p, b)
    tri.add_triangle(a, p, b)
    tri.add_triangle(b, q, a)
    event_set = frozenset(cert.participants)
    queue.drop(cert.key)
    _refresh(tri, queue, edges=[(a, b), (p, a), (q, a), (p, b), (q, b)], event_set=event_set)
    return LogEntry(
        root,
        FLIP,
        (p, q, a, b),
        "flip",
        removed_edges=(_edge(p, q),),
        added_edges=(_edge(a, b),),
        removed_triangles=(canonical_triangle((p, q, a)), canonical_triangle((q, p, b))),
        added_triangles=(canonical_triangle((a, p, b)), canonical_triangle((b, q, a))),
    )


def _middle(tri, triple, root) -> tuple:
    pts = tri.points
    for m in triple:
        x, y = [v for v in triple if v != m]
        if segment_position_at_root(pts[x], pts[y], pts[m], root) is SegmentPosition.INSIDE_SEGMENT:
            return x, m, y
    raise ValidationFailure(f"collinearity of {triple} at {root!r} has no middle point")


def _hull_event(tri, queue, cert, root) -> LogEntry:
    triple = cert.participants
    event_set = frozenset(triple)
    if len(tri.points) == 3:
        (a, b, c), = tri.triangles()
        tri.apex.clear()
        tri.add_triangle(a, c, b)
        tri.rebuild_hull()
        x, m, y = _middle(tri, triple, root)
        queue.current.clear()
        _refresh(tri, queue, edges=[(a, b), (b, c), (c, a)], vertices=[a, b, c], event_set=event_set)
        return LogEntry(
            root, HULL, (x, m, y), "reorient",
            removed_triangles=(canonical_triangle((a, b, c)),),
            added_triangles=(canonical_triangle((a, c, b)),),
        )

    x, m, y = _middle(tri, triple, root)
    if tri.hull_next.get(x) == y:
        x, y = y, x
    if tri.hull_next.get(y) == m and tri.hull_next.get(m) == x:
        x, y = y, x
    if tri.hull_next.get(x) == m and tri.hull_next.get(m) == y:
        a, b = x, y
        _check_direction(tri, a, b, m, root, inward=True)
        tri.add_triangle(a, b, m)
        tri.hull_next[a], tri.hull_prev[b] = b, a
        del tri.hull_next[m], tri.hull_prev[m]
        queue.drop((VERTEX, m))
        _refresh(tri, queue, edges=[(a, b), (a, m), (m, b)], vertices=[a, b], event_set=event_set)
        return LogEntry(
            root, HULL, (a, m, b), "insert",
            added_edges=(_edge(a, b),),
            added_triangles=(canonical_triangle((a, b, m)),),
        )
    for a, b in ((x, y), (y, x)):
        if tri.hull_next.get(a) == b and tri.apex.get((a, b)) == m:
            _check_direction(tri, a, b, m, root, inward=False)
            tri.remove_triangle(a, b, m)
            tri.hull_next[a], tri.hull_next[m] = m, b
            tri.hull_prev[b], tri.hull_prev[m] = m, a
            _refresh(tri, queue, edges=[(a, b), (a, m), (m, b)], vertices=[a, m, b], event_set=event_set)
            return LogEntry(
                root, HULL, (a, m, b), "delete",
                removed_edges=(_edge(a, b),),
                removed_triangles=(canonical_triangle((a, b, m)),),
            )
    raise ValidationFailure(f"collinearity {triple} at {root!r} is not a hull event of the current triangulation")


def _check_direction(tri, a, b, m, root, inward: bool) -> None:
    pts = tri.points
    d = P.sign_at_root(P.deriv(orient_poly(pts[a], pts[b], pts[m])), root)
    if d == 0 or (d > 0) != inward:
        raise ValidationFailure(f"hull event ({a},{m},{b}) moves the wrong way at {root!r}")


def advance(tri: KineticTriangulation, queue: CertificateQueue, t_end, debug: bool = False, log: Optional[EventLog] = None) -> EventLog:
    """Process every event up to ``t_end`` and set ``tri.now = t_end``.

    With ``debug`` the triangulation is validated between consecutive events.
    """
    t_end = as_fraction(t_end)
    end = P.exact_root(t_end)
    if P.compare_roots(tri.now, end) > 0:
        raise ValueError("t_end lies before the current time")
    if log is None:
        start = tri.now.lo if tri.now.is_exact else tri.now.rational_inside()
        log = EventLog(start, t_end, frozenset(tri.triangles()))
    last = tri.now
    while True:
        cert = queue.peek()
        if cert is None or P.compare_roots(cert.failure, end) > 0:
            break
        queue.pop()
        root = cert.failure
        nxt = queue.peek()
        while nxt is not None and P.compare_roots(nxt.failure, root) == 0:
            if frozenset(nxt.participants) != frozenset(cert.participants):
                raise TieDetected(
                    f"events {cert.participants} and {nxt.participants} coincide at {root!r}",
                    cert.participants,
                    nxt.participants,
                )
            # the same event seen through another certificate
            queue.pop()
            queue.drop(nxt.key)
            nxt = queue.peek()
        if debug and P.compare_roots(last, root) < 0:
            mid = P.rational_between(last, root)
            reason = check(tri, mid)
            if reason:
                raise ValidationFailure(f"invalid before event at {root!r}: {reason}")
        _require_simple(cert, root)
        tri.now = root
        if cert.kind == "InCircle":
            entry = _flip(tri, queue, cert, root)
        else:
            entry = _hull_event(tri, queue, cert, root)
        log.entries.append(entry)
        last = root
    tri.now = end
    if debug:
        reason = check(tri, t_end)
        if reason:
            raise ValidationFailure(f"invalid at t_end={t_end}: {reason}")
    log.t_end = t_end
    return log


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

@dataclass
class SimulationResult:
    triangulation: KineticTriangulation
    log: EventLog
    points: list
    attempts: int = 1


def jitter_points(points: Sequence[MovingPoint], rng: random.Random, scale: int = 10 ** 9) -> list[MovingPoint]:
    """Shift start positions by random rationals of magnitude at most ``1/scale``."""
    out = []
    for p in points:
        dx = Fraction(rng.randint(-1000, 1000), 1000 * scale)
        dy = Fraction(rng.randint(-1000, 1000), 1000 * scale)
        out.append(p.translated(dx, dy))
    return out


def simulate(points: Sequence[MovingPoint], t0, t1, jitter: bool = False, seed: int = 0, debug: bool = False, max_attempts: int = 8) -> SimulationResult:
    """Build at ``t0`` and advance to ``t1``; with ``jitter`` retry perturbed copies on degeneracy."""
    points = list(points)
    rng = random.Random(seed)
    attempt = 0
    current = points
    while True:
        attempt += 1
        try:
            tri = build_initial(current, t0)
            queue = schedule(tri)
            log = advance(tri, queue, t1, debug=debug)
            return SimulationResult(tri, log, current, attempt)
        except (TieDetected, GeneralPositionViolation, DegenerateAtStart):
            if not jitter or attempt >= max_attempts:
                raise
            current = jitter_points(points, rng)

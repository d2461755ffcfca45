"""Detection of Delaunay crossings from the absence intervals of edges."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from ..kernel import poly as P
from ..kernel.catalog import RootCatalog
from ..kernel.motion import MovingPoint, as_fraction
from ..kernel.poly import IsolatedRoot
from ..kernel.predicates import SegmentPosition
from ..kernel.timepoly import segment_position_at_root
from ..kinetic.log import EventLog, encode_root
from ..kinetic.simulator import simulate
from .envelope import _crossing_direction, build_redblue

SINGLE = "Single"
DOUBLE = "Double"


@dataclass(frozen=True)
class CrossingRecord:
    """Delaunay crossing ``(pq, r, [t0, t1])`` oriented so ``r`` first moves from L⁻ to L⁺."""

    edge: tuple
    crosser: int
    t0: IsolatedRoot
    t1: IsolatedRoot
    kind: str
    hits: tuple

    @property
    def p(self) -> int:
        return self.edge[0]

    @property
    def q(self) -> int:
        return self.edge[1]

    @property
    def clockwise(self) -> tuple:
        """The ``(p, r)`` pair for which this is a clockwise crossing."""
        return (self.edge[0], self.crosser)

    @property
    def counterclockwise(self) -> tuple:
        return (self.edge[1], self.crosser)

    @property
    def triple(self) -> tuple:
        return (self.edge[0], self.edge[1], self.crosser)

    def to_json(self) -> dict:
        return {
            "edge": list(self.edge),
            "crosser": self.crosser,
            "t0": encode_root(self.t0),
            "t1": encode_root(self.t1),
            "kind": self.kind,
            "hits": [encode_root(h) for h in self.hits],
            "clockwise": list(self.clockwise),
            "counterclockwise": list(self.counterclockwise),
        }


@dataclass
class CrossingCensus:
    crossings: list = field(default_factory=list)
    degenerate: list = field(default_factory=list)  # (edge, r, t0, t1) with a hit at t0 or t1
    absence_intervals: int = 0
    candidates: int = 0

    @property
    def singles(self) -> list[CrossingRecord]:
        return [c for c in self.crossings if c.kind == SINGLE]

    @property
    def doubles(self) -> list[CrossingRecord]:
        return [c for c in self.crossings if c.kind == DOUBLE]

    def to_lines(self) -> list[str]:
        head = {
            "record": "header",
            "crossings": len(self.crossings),
            "single": len(self.singles),
            "double": len(self.doubles),
            "degenerate": len(self.degenerate),
            "absence_intervals": self.absence_intervals,
        }
        lines = [json.dumps(head, sort_keys=True)]
        for c in self.crossings:
            d = c.to_json()
            d["record"] = "crossing"
            lines.append(json.dumps(d, sort_keys=True))
        return lines


def absence_intervals(log: EventLog) -> list[tuple]:
    """``(edge, t0, t1)`` for every bounded interval an edge spends outside DT(P)."""
    out = []
    for edge, spans in sorted(log.edge_timeline().items()):
        for (_, end), (start, _) in zip(spans, spans[1:]):
            if end is not None and start is not None:
                out.append((edge, end, start))
    return out


def _hits(pts, catalog, p, q, r, t0, t1) -> list[IsolatedRoot]:
    return [
        root for root in catalog.roots_in((p, q, r), t0, t1)
        if segment_position_at_root(pts[p], pts[q], pts[r], root) is SegmentPosition.INSIDE_SEGMENT
    ]


def crossing_census(
    points: Sequence[MovingPoint] | Mapping[int, MovingPoint],
    window=None,
    log: Optional[EventLog] = None,
    catalog: Optional[RootCatalog] = None,
) -> CrossingCensus:
    """Every Delaunay crossing of the instance, plus the degenerate ones counted apart."""
    pts = dict(points) if isinstance(points, Mapping) else {x.id: x for x in points}
    if log is None:
        lo, hi = window
        log = simulate(list(pts.values()), as_fraction(lo), as_fraction(hi)).log
    cat = catalog if catalog is not None else RootCatalog(pts)
    census = CrossingCensus()
    for (u, v), t0, t1 in absence_intervals(log):
        census.absence_intervals += 1
        for r in sorted(pts):
            if r in (u, v):
                continue
            hits = _hits(pts, cat, u, v, r, t0, t1)
            if not hits:
                continue
            census.candidates += 1
            degenerate = any(P.compare_roots(h, t0) == 0 or P.compare_roots(h, t1) == 0 for h in hits)
            subset = [i for i in pts if i != r]
            if not build_redblue((u, v), pts, (t0, t1), subset, cat).delaunay_throughout():
                continue
            if degenerate:
                census.degenerate.append(((u, v), r, t0, t1))
                continue
            first = hits[0]
            edge = (u, v) if _crossing_direction(pts, u, v, r, first) > 0 else (v, u)
            kind = SINGLE if len(hits) == 1 else DOUBLE
            census.crossings.append(CrossingRecord(edge, r, t0, t1, kind, tuple(hits)))
    return census


def detect_crossings(points, window=None, log: Optional[EventLog] = None, catalog: Optional[RootCatalog] = None) -> list[CrossingRecord]:
    return crossing_census(points, window, log, catalog).crossings

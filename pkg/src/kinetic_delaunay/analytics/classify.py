"""Per-event classification: level, index, shallowness and pair colors."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Optional, Sequence

from ..errors import GeneralPositionViolation
from ..kernel import poly as P
from ..kernel.catalog import RootCatalog
from ..kernel.motion import MovingPoint
from ..kernel.poly import IsolatedRoot
from ..kernel.timepoly import side_at_root
from ..kinetic.log import EventLog, encode_root
from ..oracle import GlobalEventCensus, level_of, side_counts

COCIRCULARITY = "Cocircularity"
COLLINEARITY = "Collinearity"
HULL_EVENT = "HullEvent"

RED_BLUE = "RedBlue"
MONOCHROMATIC = "Monochromatic"


@dataclass(frozen=True)
class EventRecord:
    time: IsolatedRoot
    kind: str
    participants: tuple
    level: Optional[int] = None
    shallowness: Optional[int] = None
    index: Optional[int] = None
    total: Optional[int] = None
    color_class: dict = field(default_factory=dict)

    @property
    def extremal(self) -> Optional[bool]:
        if self.index is None:
            return None
        return self.index in (1, 3)

    def red_blue_pairs(self) -> list[tuple]:
        return sorted(pair for pair, c in self.color_class.items() if c == RED_BLUE)

    def to_json(self) -> dict:
        return {
            "time": encode_root(self.time),
            "kind": self.kind,
            "participants": list(self.participants),
            "level": self.level,
            "shallowness": self.shallowness,
            "index": self.index,
            "total": self.total,
            "extremal": self.extremal,
            "color_class": {f"{a},{b}": c for (a, b), c in sorted(self.color_class.items())},
        }


def color_classes(points: Mapping[int, MovingPoint], quadruple: Sequence[int], root: IsolatedRoot) -> dict:
    """RedBlue or Monochromatic for each of the six pairs of a co-circular quadruple.

    A pair ``ab`` is red-blue when the two remaining points lie on opposite
    sides of the line through ``a`` and ``b`` at the event.
    """
    out = {}
    for a, b in combinations(sorted(quadruple), 2):
        c, d = [x for x in quadruple if x not in (a, b)]
        sc = side_at_root(points[a], points[b], points[c], root)
        sd = side_at_root(points[a], points[b], points[d], root)
        if sc == 0 or sd == 0:
            raise GeneralPositionViolation(f"three of {tuple(quadruple)} collinear at a co-circularity")
        out[(a, b)] = RED_BLUE if sc != sd else MONOCHROMATIC
    return out


def _rank(catalog: RootCatalog, ids, root) -> tuple[int, int]:
    roots = catalog.roots(ids)
    for i, r in enumerate(roots):
        if P.compare_roots(r, root) == 0:
            return i + 1, len(roots)
    raise ValueError(f"{root!r} is not a root of the tuple {tuple(ids)}")


def classify_events(source, points) -> list[EventRecord]:
    """Classify every event of a census or an event log."""
    pts = points if isinstance(points, Mapping) else {p.id: p for p in points}
    out = []
    if isinstance(source, GlobalEventCensus):
        for e in source.cocircularities:
            out.append(EventRecord(
                e.root, COCIRCULARITY, e.quadruple, level=e.level, index=e.index, total=e.total,
                color_class=color_classes(pts, e.quadruple, e.root),
            ))
        for e in source.collinearities:
            kind = HULL_EVENT if e.shallowness == 0 else COLLINEARITY
            out.append(EventRecord(e.root, kind, e.triple, shallowness=e.shallowness))
        return out
    if not isinstance(source, EventLog):
        raise TypeError("expected a GlobalEventCensus or an EventLog")
    catalog = RootCatalog(pts)
    for entry in source:
        if entry.kind == "flip":
            quad = tuple(sorted(entry.participants))
            index, total = _rank(catalog, quad, entry.time)
            out.append(EventRecord(
                entry.time, COCIRCULARITY, tuple(entry.participants), level=level_of(quad, entry.time, pts),
                index=index, total=total, color_class=color_classes(pts, quad, entry.time),
            ))
        else:
            a, m, b = entry.participants
            others = [i for i in pts if i not in (a, m, b)]
            left, right = side_counts(pts, a, b, entry.time, others)
            out.append(EventRecord(entry.time, HULL_EVENT, (a, m, b), shallowness=min(len(left), len(right))))
    return out

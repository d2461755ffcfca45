"""Trichotomy check for an edge over an interval in which it is Delaunay at one end.

Either ``p, q`` take part in a shallow collinearity, or there are many shallow
co-circularities involving ``p`` and ``q``, or a small set of points can be
removed so that ``pq`` stays Delaunay over the whole interval.  The removal set
collects the points whose red or blue function is among the shallowest at
some time of the interval.  Removing it is only guaranteed to work when no
disc through ``p`` and ``q`` ever holds ``ceil(k/3)`` red and ``ceil(k/3)``
blue points at once; such a deep disc is reported as ``deep_disc``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from ..errors import PreconditionViolated
from ..kernel import poly as P
from ..kernel.catalog import RootCatalog
from ..kernel.motion import MovingPoint, as_fraction
from ..oracle import level_of, side_counts
from .envelope import build_redblue, delaunay_at

MIN_K = 13


def default_threshold(k: int) -> int:
    return (k * k) // 144


@dataclass
class TrichotomyReport:
    edge: tuple
    interval: tuple
    k: int
    threshold: int
    shallow_collinearities: list = field(default_factory=list)  # (r, time, min side count)
    shallow_cocircularities: int = 0
    delaunay_throughout: bool = False
    deep_disc: bool = False  # some disc through p, q holds ceil(k/3) red and ceil(k/3) blue points
    removal_set: tuple = ()
    red_part: tuple = ()
    blue_part: tuple = ()
    reduced_delaunay: bool = False

    @property
    def condition_i(self) -> bool:
        return bool(self.shallow_collinearities)

    @property
    def condition_ii(self) -> bool:
        return self.shallow_cocircularities >= self.threshold

    @property
    def size_ok(self) -> bool:
        return len(self.removal_set) <= 3 * self.k

    @property
    def condition_iii(self) -> bool:
        return self.size_ok and self.reduced_delaunay

    @property
    def removal_guaranteed(self) -> bool:
        """Without a deep disc, removing the shallow points must restore Delaunayhood."""
        return not self.deep_disc

    @property
    def holds(self) -> bool:
        return self.condition_i or self.condition_ii or self.condition_iii

    def to_json(self) -> dict:
        return {
            "edge": list(self.edge),
            "interval": [str(self.interval[0]), str(self.interval[1])],
            "k": self.k,
            "threshold": self.threshold,
            "condition_i": self.condition_i,
            "condition_ii": self.condition_ii,
            "condition_iii": self.condition_iii,
            "holds": self.holds,
            "shallow_collinearities": [[r, float(t), s] for r, t, s in self.shallow_collinearities],
            "shallow_cocircularities": self.shallow_cocircularities,
            "delaunay_throughout": self.delaunay_throughout,
            "deep_disc": self.deep_disc,
            "removal_set": list(self.removal_set),
            "removal_size": len(self.removal_set),
            "reduced_delaunay": self.reduced_delaunay,
        }

    def to_lines(self) -> list[str]:
        return [json.dumps(self.to_json(), sort_keys=True)]


def redblue_theorem_check(
    edge: Sequence[int],
    interval,
    k: int,
    points: Mapping[int, MovingPoint] | Sequence[MovingPoint],
    threshold: Optional[int] = None,
    catalog: Optional[RootCatalog] = None,
) -> TrichotomyReport:
    pts = dict(points) if isinstance(points, Mapping) else {x.id: x for x in points}
    if k < MIN_K:
        raise PreconditionViolated(f"k must exceed 12, got {k}")
    p, q = edge
    t0, t1 = as_fraction(interval[0]), as_fraction(interval[1])
    if not t0 < t1:
        raise PreconditionViolated("empty interval")
    if not (delaunay_at(pts, p, q, t0) or delaunay_at(pts, p, q, t1)):
        raise PreconditionViolated(f"edge {(p, q)} is Delaunay at neither end of [{t0}, {t1}]")
    cat = catalog if catalog is not None else RootCatalog(pts)
    report = TrichotomyReport((p, q), (t0, t1), k, default_threshold(k) if threshold is None else threshold)
    arr = build_redblue((p, q), pts, (t0, t1), None, cat)
    lo, hi = arr.window

    def interior(root):
        return P.compare_roots(lo, root) < 0 < P.compare_roots(hi, root)

    # (i) shallow collinearities of p, q and a third point
    for d in arr.discontinuities:
        if not interior(d.time):
            continue
        others = [i for i in pts if i not in (p, q, d.r)]
        left, right = side_counts(pts, p, q, d.time, others)
        depth = min(len(left), len(right))
        if depth <= k:
            report.shallow_collinearities.append((d.r, d.time, depth))

    # (ii) shallow co-circularities involving p and q
    for v in arr.vertices:
        if interior(v.time) and level_of((p, q) + v.pair, v.time, pts) <= k:
            report.shallow_cocircularities += 1

    # (iii) removal set
    report.delaunay_throughout = arr.delaunay_throughout()
    if report.delaunay_throughout:
        report.reduced_delaunay = True
        return report
    depth = math.ceil(k / 3)
    red, blue = set(), set()
    for piece in arr.pieces:
        s = piece.sample
        reds = sorted(s.red, key=s.red.__getitem__)
        blues = sorted(s.blue, key=s.blue.__getitem__, reverse=True)
        red.update(reds[: depth + 1])
        blue.update(blues[: depth + 1])
        if len(reds) >= depth and len(blues) >= depth and s.red[reds[depth - 1]] < s.blue[blues[depth - 1]]:
            report.deep_disc = True
    removal = red | blue
    report.red_part, report.blue_part = tuple(sorted(red)), tuple(sorted(blue))
    report.removal_set = tuple(sorted(removal))
    kept = [i for i in pts if i not in removal]
    report.reduced_delaunay = build_redblue((p, q), pts, (t0, t1), kept, cat).delaunay_throughout()
    return report

"""Red-blue arrangement of an edge and its envelope criterion.

For an edge ``pq`` at time ``t`` let ``m`` be the midpoint and ``n`` the right
normal of ``q - p``.  Every disc through ``p`` and ``q`` has its center at
``m + lam * n``.  A point ``r`` off the line defines the value ``lam_r`` of the
disc through ``p, q, r``:

    lam_r = (|m - r|^2 - |m - p|^2) / (2 n . (r - m))

Red points lie in the right halfplane (L⁺) and forbid centers above their value,
blue points (L⁻) forbid centers below it.  ``pq`` is Delaunay iff
``E⁻ = max(blue) < E⁺ = min(red)`` and no point lies inside the segment.
Values are measured in units of ``|pq|``, so they are the signed center
distances divided by the edge length, which keeps everything rational.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from ..errors import CoincidentPoints, GeneralPositionViolation
from ..kernel import poly as P
from ..kernel.catalog import RootCatalog
from ..kernel.motion import MovingPoint, as_fraction
from ..kernel.poly import IsolatedRoot
from ..kernel.predicates import SegmentPosition
from ..kernel.timepoly import orient_poly, segment_position_at_root, side_at_root

RED = "red"
BLUE = "blue"
RED_RED = "red-red"
BLUE_BLUE = "blue-blue"
RED_BLUE = "red-blue"


def _as_root(x) -> IsolatedRoot:
    return x if isinstance(x, IsolatedRoot) else P.exact_root(as_fraction(x))


@dataclass(frozen=True)
class EnvelopeSample:
    """Envelope values of an edge at one rational time.  ``None`` stands for ±∞."""

    t: Fraction
    lower: Optional[Fraction]  # E⁻: highest blue value
    upper: Optional[Fraction]  # E⁺: lowest red value
    lower_owner: Optional[int]
    upper_owner: Optional[int]
    blocker: Optional[int]  # a point strictly inside segment pq
    red: dict
    blue: dict

    @property
    def delaunay(self) -> bool:
        if self.blocker is not None:
            return False
        if self.lower is None or self.upper is None:
            return True
        return self.lower < self.upper

    def function(self, r: int) -> Optional[str]:
        """``"+"`` if ``f_r⁺`` is defined at this time, ``"-"`` for ``f_r⁻``, None on the line."""
        if r in self.red:
            return "+"
        if r in self.blue:
            return "-"
        return None

    def red_level(self, r: int) -> int:
        """Number of red functions strictly below ``f_r⁺``."""
        v = self.red[r]
        return sum(1 for x in self.red.values() if x < v)

    def blue_level(self, r: int) -> int:
        """Number of blue functions strictly above ``f_r⁻``."""
        v = self.blue[r]
        return sum(1 for x in self.blue.values() if x > v)


def envelope_at(points: Mapping[int, MovingPoint], p: int, q: int, t, subset: Optional[Iterable[int]] = None) -> EnvelopeSample:
    """Evaluate every ``lam_r`` for ``r`` in ``subset`` (default: all other points) at rational ``t``."""
    t = as_fraction(t)
    px, py = points[p].position(t)
    qx, qy = points[q].position(t)
    if px == qx and py == qy:
        raise CoincidentPoints(f"{p} and {q} coincide at t={t}")
    mx, my = (px + qx) / 2, (py + qy) / 2
    nx, ny = qy - py, px - qx
    rad = (px - mx) ** 2 + (py - my) ** 2
    others = subset if subset is not None else points
    red, blue = {}, {}
    blocker = None
    for r in others:
        if r in (p, q):
            continue
        rx, ry = points[r].position(t)
        s = nx * (rx - mx) + ny * (ry - my)
        d = (rx - mx) ** 2 + (ry - my) ** 2 - rad
        if s == 0:
            if d < 0:
                blocker = r
            elif d == 0:
                raise CoincidentPoints(f"{r} coincides with an endpoint of {(p, q)} at t={t}")
            continue
        (red if s > 0 else blue)[r] = d / (2 * s)
    lo_owner = max(blue, key=blue.__getitem__) if blue else None
    hi_owner = min(red, key=red.__getitem__) if red else None
    return EnvelopeSample(
        t,
        blue[lo_owner] if blue else None,
        red[hi_owner] if red else None,
        lo_owner,
        hi_owner,
        blocker,
        red,
        blue,
    )


def delaunay_at(points: Mapping[int, MovingPoint], p: int, q: int, t, subset: Optional[Iterable[int]] = None) -> bool:
    return envelope_at(points, p, q, t, subset).delaunay


@dataclass(frozen=True)
class Discontinuity:
    """Point ``r`` meets ``L_pq``; ``inside`` tells whether it passes through the segment."""

    r: int
    time: IsolatedRoot
    inside: bool
    direction: int  # +1: from L⁻ to L⁺, -1: from L⁺ to L⁻


@dataclass(frozen=True)
class ArrangementVertex:
    """A co-circularity of ``p, q, a, b`` labelled by the colors of ``a`` and ``b``."""

    time: IsolatedRoot
    pair: tuple
    label: str


@dataclass(frozen=True)
class EnvelopePiece:
    """An open time interval between consecutive breakpoints and its envelope state."""

    start: IsolatedRoot
    end: IsolatedRoot
    sample: EnvelopeSample

    @property
    def delaunay(self) -> bool:
        return self.sample.delaunay


@dataclass
class RedBlueArrangement:
    edge: tuple
    window: tuple
    members: tuple
    discontinuities: list = field(default_factory=list)
    vertices: list = field(default_factory=list)
    pieces: list = field(default_factory=list)

    def hits(self) -> list[Discontinuity]:
        """Times a member passes through the open segment ``pq``."""
        return [d for d in self.discontinuities if d.inside]

    def interior_hits(self) -> list[Discontinuity]:
        lo, hi = self.window
        return [d for d in self.hits() if P.compare_roots(lo, d.time) < 0 < P.compare_roots(hi, d.time)]

    def upper_envelope_breaks(self) -> list[tuple]:
        """``(start, owner)`` of each maximal run of E⁺ (the lowest red function)."""
        return _runs(self.pieces, lambda s: s.upper_owner)

    def lower_envelope_breaks(self) -> list[tuple]:
        return _runs(self.pieces, lambda s: s.lower_owner)

    def delaunay_throughout(self) -> bool:
        """True iff ``pq`` is Delaunay among the members on the whole window.

        The window's endpoints may be event times themselves; they are treated
        as boundary instants and only the open interior is tested.
        """
        if self.interior_hits():
            return False
        return all(piece.delaunay for piece in self.pieces)

    def failures(self) -> list[EnvelopePiece]:
        return [piece for piece in self.pieces if not piece.delaunay]


def _runs(pieces, key) -> list[tuple]:
    out = []
    for piece in pieces:
        owner = key(piece.sample)
        if not out or out[-1][1] != owner:
            out.append((piece.start, owner))
    return out


def _sorted_unique(roots: Iterable[IsolatedRoot]) -> list[IsolatedRoot]:
    ordered = sorted(roots, key=functools.cmp_to_key(P.compare_roots))
    out = []
    for r in ordered:
        if not out or P.compare_roots(out[-1], r) != 0:
            out.append(r)
    return out


def _strictly_inside(r: IsolatedRoot, lo: IsolatedRoot, hi: IsolatedRoot) -> bool:
    return P.compare_roots(lo, r) < 0 and P.compare_roots(r, hi) < 0


def _crossing_direction(points, p, q, r, root) -> int:
    d = P.sign_at_root(P.deriv(orient_poly(points[p], points[q], points[r])), root)
    if d == 0:
        raise GeneralPositionViolation(f"{r} touches the line of {(p, q)} without crossing at {root!r}")
    # orient > 0 means r is left of p->q (L⁻)
    return 1 if d < 0 else -1


def build_redblue(
    edge: Sequence[int],
    points: Mapping[int, MovingPoint] | Sequence[MovingPoint],
    window,
    subset: Optional[Iterable[int]] = None,
    catalog: Optional[RootCatalog] = None,
) -> RedBlueArrangement:
    """Arrangement of ``edge`` over ``subset`` (default: every other point) on the closed ``window``.

    Window bounds are rationals or isolated roots.  Between consecutive
    breakpoints (collinearities of ``p, q, r`` and co-circularities of
    ``p, q, a, b``) the envelope owners and the Delaunay status are constant,
    so one rational sample per gap describes the whole arrangement.
    """
    pts = points if isinstance(points, Mapping) else {x.id: x for x in points}
    p, q = edge
    members = tuple(sorted(i for i in (subset if subset is not None else pts) if i not in (p, q)))
    cat = catalog if catalog is not None else RootCatalog(pts)
    lo, hi = _as_root(window[0]), _as_root(window[1])
    arr = RedBlueArrangement((p, q), (lo, hi), members)

    breaks = []
    for r in members:
        for root in cat.roots_in((p, q, r), lo, hi):
            pos = segment_position_at_root(pts[p], pts[q], pts[r], root)
            if pos is SegmentPosition.NOT_ON_LINE:
                continue
            inside = pos is SegmentPosition.INSIDE_SEGMENT
            arr.discontinuities.append(Discontinuity(r, root, inside, _crossing_direction(pts, p, q, r, root)))
            breaks.append(root)
    for a, b in combinations(members, 2):
        for root in cat.roots_in((p, q, a, b), lo, hi):
            sa = side_at_root(pts[p], pts[q], pts[a], root)
            sb = side_at_root(pts[p], pts[q], pts[b], root)
            if sa == 0 or sb == 0:
                raise GeneralPositionViolation(f"co-circularity {(p, q, a, b)} coincides with a collinearity")
            label = RED_BLUE if sa != sb else (RED_RED if sa > 0 else BLUE_BLUE)
            arr.vertices.append(ArrangementVertex(root, (a, b), label))
            breaks.append(root)
    arr.discontinuities.sort(key=functools.cmp_to_key(lambda x, y: P.compare_roots(x.time, y.time)))
    arr.vertices.sort(key=functools.cmp_to_key(lambda x, y: P.compare_roots(x.time, y.time)))

    if P.compare_roots(lo, hi) < 0:
        inner = [r for r in _sorted_unique(breaks) if _strictly_inside(r, lo, hi)]
        stops = [lo] + inner + [hi]
        for a, b in zip(stops, stops[1:]):
            t = P.rational_between(a, b)
            arr.pieces.append(EnvelopePiece(a, b, envelope_at(pts, p, q, t, members)))
    return arr


def delaunay_throughout(
    points: Mapping[int, MovingPoint] | Sequence[MovingPoint],
    edge: Sequence[int],
    window,
    exclude: Iterable[int] = (),
    catalog: Optional[RootCatalog] = None,
) -> bool:
    """Is ``edge`` in DT(P minus ``exclude``) on the whole (open) window?"""
    pts = points if isinstance(points, Mapping) else {x.id: x for x in points}
    ex = set(exclude)
    subset = [i for i in pts if i not in ex]
    return build_redblue(edge, pts, window, subset, catalog).delaunay_throughout()

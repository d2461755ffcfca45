"""Mutable triangulation state and its exact validity check."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..kernel.motion import MovingPoint, as_fraction
from ..kernel.poly import IsolatedRoot
from ..kernel.predicates import in_disc_h, orient_h
from .static import canonical_triangle


@dataclass
class KineticTriangulation:
    """DT(P) as a map from directed edges to the apex of their left triangle.

    Every ccw triangle ``(a, b, c)`` contributes ``apex[(a,b)] = c``,
    ``apex[(b,c)] = a`` and ``apex[(c,a)] = b``.  A directed edge whose reverse
    is absent is a hull edge traversed counterclockwise.
    """

    points: dict[int, MovingPoint]
    apex: dict[tuple[int, int], int]
    hull_next: dict[int, int]
    hull_prev: dict[int, int]
    now: IsolatedRoot

    @classmethod
    def from_triangles(cls, points, triangles, now: IsolatedRoot) -> KineticTriangulation:
        apex = {}
        for a, b, c in triangles:
            apex[(a, b)], apex[(b, c)], apex[(c, a)] = c, a, b
        tri = cls({p.id: p for p in points}, apex, {}, {}, now)
        tri.rebuild_hull()
        return tri

    def rebuild_hull(self) -> None:
        self.hull_next = {u: v for (u, v) in self.apex if (v, u) not in self.apex}
        self.hull_prev = {v: u for u, v in self.hull_next.items()}

    def add_triangle(self, a: int, b: int, c: int) -> None:
        self.apex[(a, b)], self.apex[(b, c)], self.apex[(c, a)] = c, a, b

    def remove_triangle(self, a: int, b: int, c: int) -> None:
        for e in ((a, b), (b, c), (c, a)):
            del self.apex[e]

    def triangles(self) -> set[tuple[int, int, int]]:
        return {canonical_triangle((a, b, c)) for (a, b), c in self.apex.items()}

    def edges(self) -> set[tuple[int, int]]:
        return {(min(u, v), max(u, v)) for u, v in self.apex}

    def hull(self) -> list[int]:
        """Hull vertices in counterclockwise order, starting from the smallest id."""
        if not self.hull_next:
            return []
        start = min(self.hull_next)
        out = [start]
        v = self.hull_next[start]
        while v != start:
            out.append(v)
            v = self.hull_next[v]
            if len(out) > len(self.hull_next):
                break
        return out

    def is_internal(self, u: int, v: int) -> bool:
        return (u, v) in self.apex and (v, u) in self.apex

    def __len__(self) -> int:
        return len(self.points)


def check(tri: KineticTriangulation, t) -> Optional[str]:
    """First reason ``tri`` is not the Delaunay triangulation at rational ``t``, or None."""
    t = as_fraction(t)
    h = {i: p.homogeneous_at(t) for i, p in tri.points.items()}
    tris = tri.triangles()
    for a, b, c in tris:
        if orient_h(h[a], h[b], h[c]) <= 0:
            return f"triangle {(a, b, c)} not counterclockwise"
        if tri.apex.get((b, c)) != a or tri.apex.get((c, a)) != b:
            return f"triangle {(a, b, c)} has inconsistent adjacency"
    used = {v for e in tri.apex for v in e}
    if used != set(tri.points):
        return f"vertices {sorted(set(tri.points) - used)} are not in any triangle"

    # hull edges must form one convex counterclockwise cycle enclosing every point
    succ = {u: v for (u, v) in tri.apex if (v, u) not in tri.apex}
    if len(succ) != len({v for v in succ.values()}):
        return "hull is not a simple cycle"
    cycle = tri.hull()
    if len(cycle) != len(succ):
        return "hull edges form more than one cycle"
    if succ != tri.hull_next:
        return "stored hull differs from the adjacency"
    for i, u in enumerate(cycle):
        v = cycle[(i + 1) % len(cycle)]
        for x in tri.points:
            if x not in (u, v) and orient_h(h[u], h[v], h[x]) <= 0:
                return f"point {x} not strictly inside hull edge {(u, v)}"
    if len(tris) != 2 * len(tri.points) - len(cycle) - 2:
        return "triangle count violates Euler's formula"

    for a, b, c in tris:
        for x in tri.points:
            if x not in (a, b, c) and in_disc_h(h[a], h[b], h[c], h[x]) > 0:
                return f"point {x} inside circumdisc of {(a, b, c)}"
    return None


def validate(tri: KineticTriangulation, t) -> bool:
    """True iff ``tri`` is a valid Delaunay triangulation of the slice at ``t``."""
    return check(tri, t) is None

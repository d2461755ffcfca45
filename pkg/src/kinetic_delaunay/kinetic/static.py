"""Static Delaunay triangulation of a time slice (Bowyer-Watson with ghost triangles)."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from ..errors import DegenerateAtStart
from ..kernel.motion import MovingPoint, as_fraction
from ..kernel.predicates import dot_h, in_disc_h, incircle_h, orient_h, same_point_h

GHOST = -1


def _ghost_conflict(h, u, v, x) -> bool:
    # ghost triangle on the outer side of hull edge u->v
    o = orient_h(h[u], h[v], h[x])
    if o < 0:
        return True
    if o == 0:
        return dot_h(h[u], h[v], h[x]) > 0 and dot_h(h[v], h[u], h[x]) > 0
    return False


def delaunay_triangles(h: dict) -> set[tuple[int, int, int]]:
    """Counterclockwise Delaunay triangles of homogeneous points ``{id: (X, Y, W)}``.

    Assumes no three points collinear and no four co-circular.
    """
    ids = sorted(h)
    if len(ids) < 3:
        raise DegenerateAtStart("need at least three points", tuple(ids))
    a, b = ids[0], ids[1]
    c = next((x for x in ids[2:] if orient_h(h[a], h[b], h[x]) != 0), None)
    if c is None:
        raise DegenerateAtStart("all points collinear", tuple(ids))
    if orient_h(h[a], h[b], h[c]) < 0:
        a, b = b, a
    tris = {(a, b, c), (b, a, GHOST), (c, b, GHOST), (a, c, GHOST)}
    for x in ids:
        if x in (a, b, c):
            continue
        bad = []
        for t in tris:
            if t[2] == GHOST:
                if _ghost_conflict(h, t[1], t[0], x):
                    bad.append(t)
            elif incircle_h(h[t[0]], h[t[1]], h[t[2]], h[x]) > 0:
                bad.append(t)
        edges = set()
        for t in bad:
            tris.discard(t)
            edges.update(((t[0], t[1]), (t[1], t[2]), (t[2], t[0])))
        for u, v in edges:
            if (v, u) in edges:
                continue
            if u == GHOST:
                tris.add((v, x, GHOST))
            elif v == GHOST:
                tris.add((x, u, GHOST))
            else:
                tris.add((u, v, x))
    return {t for t in tris if GHOST not in t}


def canonical_triangle(t) -> tuple[int, int, int]:
    """Rotate a ccw triangle so its smallest id comes first."""
    i = t.index(min(t))
    return tuple(t[i:] + t[:i])


def slice_at(points: Sequence[MovingPoint], t) -> dict:
    t = as_fraction(t)
    return {p.id: p.homogeneous_at(t) for p in points}


def check_general_position(points: Sequence[MovingPoint], t, triangles=None) -> None:
    """Raise :class:`DegenerateAtStart` on a degeneracy visible at time ``t``.

    Coincidences and collinear triples are checked over all tuples.
    Co-circularity is checked only for the quadruples spanned by Delaunay edges,
    which are the only ones that affect the triangulation.
    """
    h = slice_at(points, t)
    ids = sorted(h)
    for u, v in combinations(ids, 2):
        if same_point_h(h[u], h[v]):
            raise DegenerateAtStart(f"points {u} and {v} coincide at t={t}", (u, v))
    for u, v, w in combinations(ids, 3):
        if orient_h(h[u], h[v], h[w]) == 0:
            raise DegenerateAtStart(f"points {u},{v},{w} are collinear at t={t}", (u, v, w))
    if triangles is not None:
        _check_cocircular(h, triangles, t)


def static_delaunay(points: Sequence[MovingPoint], t, check: bool = True) -> set[tuple[int, int, int]]:
    """Delaunay triangle set (canonical ccw tuples) of the slice at rational time ``t``."""
    h = slice_at(points, t)
    if check:
        check_general_position(points, t)
    tris = delaunay_triangles(h)
    if check:
        _check_cocircular(h, tris, t)
    return {canonical_triangle(x) for x in tris}


def _check_cocircular(h, tris, t):
    apex = {}
    for a, b, c in tris:
        apex[(a, b)], apex[(b, c)], apex[(c, a)] = c, a, b
    for (u, v), w in apex.items():
        x = apex.get((v, u))
        if x is not None and u < v and in_disc_h(h[u], h[v], h[w], h[x]) == 0:
            raise DegenerateAtStart(f"points {u},{v},{w},{x} are co-circular at t={t}", (u, v, w, x))


def brute_force_delaunay(points: Sequence[MovingPoint], t) -> set[tuple[int, int, int]]:
    """All ccw triples whose open circumdisc holds no other point.  O(n^4)."""
    h = slice_at(points, t)
    ids = sorted(h)
    out = set()
    for a, b, c in combinations(ids, 3):
        o = orient_h(h[a], h[b], h[c])
        if o == 0:
            continue
        if all(in_disc_h(h[a], h[b], h[c], h[x]) <= 0 for x in ids if x not in (a, b, c)):
            out.add(canonical_triangle((a, b, c) if o > 0 else (a, c, b)))
    return out

"""Memoized all-time event roots of point tuples."""

from __future__ import annotations

from typing import Iterable, Mapping

from . import poly as P
from .motion import MovingPoint
from .poly import IsolatedRoot
from .timepoly import cocircularity_poly, collinearity_poly


class RootCatalog:
    """All real co-circularity / collinearity roots of tuples, computed once.

    Keys are sorted id tuples; the root set of a tuple does not depend on the
    order of its points.
    """

    def __init__(self, points: Mapping[int, MovingPoint] | Iterable[MovingPoint]):
        if not isinstance(points, Mapping):
            points = {p.id: p for p in points}
        self.points = dict(points)
        self._roots: dict[tuple, list[IsolatedRoot]] = {}
        self._polys: dict[tuple, tuple] = {}

    def poly(self, ids) -> tuple:
        key = tuple(sorted(ids))
        f = self._polys.get(key)
        if f is None:
            pts = [self.points[i] for i in key]
            if len(key) == 4:
                f = cocircularity_poly(*pts).coefficients
            elif len(key) == 3:
                f = collinearity_poly(*pts).coefficients
            else:
                raise ValueError(f"expected 3 or 4 ids, got {key}")
            self._polys[key] = f
        return f

    def roots(self, ids) -> list[IsolatedRoot]:
        key = tuple(sorted(ids))
        r = self._roots.get(key)
        if r is None:
            r = P.all_real_roots(self.poly(key))
            self._roots[key] = r
        return r

    def roots_in(self, ids, lo=None, hi=None) -> list[IsolatedRoot]:
        """Roots in the closed window ``[lo, hi]``; bounds may be rationals or roots."""
        out = []
        for r in self.roots(ids):
            if lo is not None and _cmp(r, lo) < 0:
                continue
            if hi is not None and _cmp(r, hi) > 0:
                continue
            out.append(r)
        return out

    def __len__(self) -> int:
        return len(self._roots)


def _cmp(r: IsolatedRoot, bound) -> int:
    if isinstance(bound, IsolatedRoot):
        return P.compare_roots(r, bound)
    return P.compare_to_rational(r, bound)

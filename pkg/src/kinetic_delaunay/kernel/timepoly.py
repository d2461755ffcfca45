"""Event polynomials in time and the predicates built on them.

For unit-speed linear motion the lifted coordinate ``x² + y²`` of every point
carries the same ``t²`` term, so subtracting ``t²`` from the lift leaves the
in-circle determinant unchanged and makes every lift entry affine in ``t``.
The in-circle determinant of four moving points is therefore a cubic and the
orientation determinant of three moving points a quadratic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import CoincidentPoints, CollinearBase, DegenerateMotion
from . import poly as P
from .motion import MovingPoint, as_fraction
from .poly import IsolatedRoot
from .predicates import SegmentPosition, in_disc_h, orient_h, same_point_h, segment_position_h

COCIRCULARITY = "cocircularity"
COLLINEARITY = "collinearity"


@dataclass(frozen=True)
class TimePolynomial:
    """Primitive integer coefficients (lowest degree first, positive leading term)."""

    coefficients: tuple
    kind: str

    @property
    def degenerate(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, t) -> Fraction:
        return P.eval_exact(self.coefficients, as_fraction(t))


# ---------------------------------------------------------------------------
# raw (sign-meaningful) polynomials
# ---------------------------------------------------------------------------

def _lifted_row(p: MovingPoint):
    """Row ``(s·X, s·Y, W, s²)`` of the in-circle matrix, each entry a poly in t."""
    s, X0, X1, Y0, Y1 = p.int_form
    return (
        P.trim((s * X0, s * X1)),
        P.trim((s * Y0, s * Y1)),
        P.trim((X0 * X0 + Y0 * Y0, 2 * (X0 * X1 + Y0 * Y1))),
        (s * s,),
    )


def _det3_poly(r1, r2, r3) -> tuple:
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = r1, r2, r3
    mul, sub, add = P.mul, P.sub, P.add
    return add(
        sub(mul(a1, sub(mul(b2, c3), mul(b3, c2))), mul(a2, sub(mul(b1, c3), mul(b3, c1)))),
        mul(a3, sub(mul(b1, c2), mul(b2, c1))),
    )


def incircle_cofactors(a: MovingPoint, b: MovingPoint, c: MovingPoint) -> tuple:
    """Cofactors ``(Cx, Cy, Cl, C1)`` of the fourth row of the in-circle matrix.

    For any fourth point ``d`` with lifted row ``(x, y, l, k)`` the raw in-circle
    polynomial is ``Cx·x + Cy·y + Cl·l + C1·k``.
    """
    ra, rb, rc = _lifted_row(a), _lifted_row(b), _lifted_row(c)

    def minor(skip):
        cols = [j for j in range(4) if j != skip]
        return _det3_poly(*[tuple(r[j] for j in cols) for r in (ra, rb, rc)])

    # expansion along row 4: sign (-1)^(4+j) for 1-based column j
    return (
        P.scale(minor(0), -1),
        minor(1),
        P.scale(minor(2), -1),
        minor(3),
    )


def _affine_combination(cof, row) -> tuple:
    # sum of cof[i] * row[i] where every row entry has degree <= 1
    out = [0] * (max(len(c) for c in cof) + 1)
    for c, e in zip(cof, row):
        e0 = e[0] if e else 0
        e1 = e[1] if len(e) > 1 else 0
        for i, ci in enumerate(c):
            out[i] += ci * e0
            out[i + 1] += ci * e1
    return P.trim(out)


def incircle_from_cofactors(cof, d: MovingPoint) -> tuple:
    return _affine_combination(cof, _lifted_row(d))


def incircle_poly(a: MovingPoint, b: MovingPoint, c: MovingPoint, d: MovingPoint) -> tuple:
    """Raw in-circle polynomial: positive iff ``d`` inside the circle of ccw ``a, b, c``."""
    return incircle_from_cofactors(incircle_cofactors(a, b, c), d)


def _orient_row(p: MovingPoint):
    s, X0, X1, Y0, Y1 = p.int_form
    return (P.trim((X0, X1)), P.trim((Y0, Y1)), (s,))


def orient_cofactors(a: MovingPoint, b: MovingPoint) -> tuple:
    (ax, ay, aw), (bx, by, bw) = _orient_row(a), _orient_row(b)
    mul, sub = P.mul, P.sub
    return (
        sub(mul(ay, bw), mul(by, aw)),
        P.scale(sub(mul(ax, bw), mul(bx, aw)), -1),
        sub(mul(ax, by), mul(bx, ay)),
    )


def orient_from_cofactors(cof, c: MovingPoint) -> tuple:
    return _affine_combination(cof, _orient_row(c))


def orient_poly(a: MovingPoint, b: MovingPoint, c: MovingPoint) -> tuple:
    """Raw orientation polynomial: positive iff ``a, b, c`` are counterclockwise."""
    return orient_from_cofactors(orient_cofactors(a, b), c)


def dot_poly(a: MovingPoint, b: MovingPoint, c: MovingPoint) -> tuple:
    """Polynomial with the sign of ``(b - a)·(c - a)``."""
    sa, ax0, ax1, ay0, ay1 = a.int_form
    sb, bx0, bx1, by0, by1 = b.int_form
    sc, cx0, cx1, cy0, cy1 = c.int_form
    v1x = P.trim((bx0 * sa - ax0 * sb, bx1 * sa - ax1 * sb))
    v1y = P.trim((by0 * sa - ay0 * sb, by1 * sa - ay1 * sb))
    v2x = P.trim((cx0 * sa - ax0 * sc, cx1 * sa - ax1 * sc))
    v2y = P.trim((cy0 * sa - ay0 * sc, cy1 * sa - ay1 * sc))
    return P.add(P.mul(v1x, v2x), P.mul(v1y, v2y))


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def _require_distinct(points: Sequence[MovingPoint]):
    ids = [p.id for p in points]
    if len(set(ids)) != len(ids):
        raise ValueError(f"point ids must be distinct, got {ids}")


def cocircularity_poly(p1: MovingPoint, p2: MovingPoint, p3: MovingPoint, p4: MovingPoint) -> TimePolynomial:
    """Cubic whose real roots are the co-circularity times of the four points."""
    _require_distinct((p1, p2, p3, p4))
    raw = incircle_poly(p1, p2, p3, p4)
    if not raw:
        raise DegenerateMotion(f"points {p1.id},{p2.id},{p3.id},{p4.id} are co-circular at all times")
    return TimePolynomial(P.primitive(raw), COCIRCULARITY)


def collinearity_poly(p1: MovingPoint, p2: MovingPoint, p3: MovingPoint) -> TimePolynomial:
    """Quadratic whose real roots are the collinearity times of the three points."""
    _require_distinct((p1, p2, p3))
    raw = orient_poly(p1, p2, p3)
    if not raw:
        raise DegenerateMotion(f"points {p1.id},{p2.id},{p3.id} are collinear at all times")
    return TimePolynomial(P.primitive(raw), COLLINEARITY)


def isolate_roots(poly: TimePolynomial, window=(None, None)) -> list[IsolatedRoot]:
    """All real roots of ``poly`` inside the closed ``window``, sorted by time."""
    if poly.degenerate:
        raise DegenerateMotion("cannot isolate roots of the zero polynomial")
    return P.isolate_roots(poly.coefficients, window)


def incircle_at(p: MovingPoint, q: MovingPoint, r: MovingPoint, s: MovingPoint, t) -> int:
    """+1 if ``s`` is strictly inside the circumdisc of ``p, q, r`` at time ``t``."""
    t = as_fraction(t)
    hp, hq, hr, hs = (x.homogeneous_at(t) for x in (p, q, r, s))
    if orient_h(hp, hq, hr) == 0:
        raise CollinearBase(f"{p.id},{q.id},{r.id} collinear at t={t}")
    return in_disc_h(hp, hq, hr, hs)


def orient_at(p: MovingPoint, q: MovingPoint, r: MovingPoint, t) -> int:
    """Side of ``r`` w.r.t. the line oriented from ``p`` to ``q``.

    +1 means the right halfplane (L⁺), -1 the left halfplane (L⁻), 0 on the line.
    """
    t = as_fraction(t)
    hp, hq, hr = (x.homogeneous_at(t) for x in (p, q, r))
    if same_point_h(hp, hq):
        raise CoincidentPoints(f"{p.id} and {q.id} coincide at t={t}")
    return -orient_h(hp, hq, hr)


def on_segment_at(p: MovingPoint, q: MovingPoint, r: MovingPoint, t) -> SegmentPosition:
    t = as_fraction(t)
    hp, hq, hr = (x.homogeneous_at(t) for x in (p, q, r))
    if same_point_h(hr, hp) or same_point_h(hr, hq):
        raise CoincidentPoints(f"{r.id} coincides with an endpoint at t={t}")
    return segment_position_h(hp, hq, hr)


# ---------------------------------------------------------------------------
# the same predicates at an algebraic time
# ---------------------------------------------------------------------------

def side_at_root(p: MovingPoint, q: MovingPoint, r: MovingPoint, root: IsolatedRoot) -> int:
    """:func:`orient_at` evaluated at an isolated root (+1 = L⁺, -1 = L⁻)."""
    return -P.sign_at_root(orient_poly(p, q, r), root)


def segment_position_at_root(p: MovingPoint, q: MovingPoint, r: MovingPoint, root: IsolatedRoot) -> SegmentPosition:
    if P.sign_at_root(orient_poly(p, q, r), root) != 0:
        return SegmentPosition.NOT_ON_LINE
    if P.sign_at_root(dot_poly(p, q, r), root) < 0:
        return SegmentPosition.ON_RAY_BEYOND_P
    if P.sign_at_root(dot_poly(q, p, r), root) < 0:
        return SegmentPosition.ON_RAY_BEYOND_Q
    return SegmentPosition.INSIDE_SEGMENT


def in_disc_at_root(a: MovingPoint, b: MovingPoint, c: MovingPoint, d: MovingPoint, root: IsolatedRoot) -> int:
    o = P.sign_at_root(orient_poly(a, b, c), root)
    if o == 0:
        raise CollinearBase(f"{a.id},{b.id},{c.id} collinear at {root!r}")
    return o * P.sign_at_root(incircle_poly(a, b, c, d), root)

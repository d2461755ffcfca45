"""Exact static predicates on homogeneous integer points ``(X, Y, W)``, ``W > 0``.

A homogeneous point stands for ``(X/W, Y/W)``.  Rows of the determinants are
scaled by positive powers of ``W`` so signs are unchanged.
"""

from __future__ import annotations

from enum import Enum


def orient_h(a, b, c) -> int:
    """+1 if ``a, b, c`` turn counterclockwise, -1 if clockwise, 0 if collinear."""
    ax, ay, aw = a
    bx, by, bw = b
    cx, cy, cw = c
    d = ax * (by * cw - cy * bw) - ay * (bx * cw - cx * bw) + aw * (bx * cy - cx * by)
    return (d > 0) - (d < 0)


def incircle_h(a, b, c, d) -> int:
    """Sign of the standard in-circle determinant.

    Positive iff ``d`` is strictly inside the circle through ``a, b, c`` when
    those three are counterclockwise (the sign flips for clockwise bases).
    """
    rows = []
    for X, Y, W in (a, b, c, d):
        rows.append((X * W, Y * W, X * X + Y * Y, W * W))
    # cofactor expansion along the last column
    (a1, a2, a3, a4), (b1, b2, b3, b4), (c1, c2, c3, c4), (d1, d2, d3, d4) = rows
    det = (
        -a4 * _det3(b1, b2, b3, c1, c2, c3, d1, d2, d3)
        + b4 * _det3(a1, a2, a3, c1, c2, c3, d1, d2, d3)
        - c4 * _det3(a1, a2, a3, b1, b2, b3, d1, d2, d3)
        + d4 * _det3(a1, a2, a3, b1, b2, b3, c1, c2, c3)
    )
    return (det > 0) - (det < 0)


def _det3(a1, a2, a3, b1, b2, b3, c1, c2, c3):
    return a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1)


def in_disc_h(a, b, c, d) -> int:
    """+1 if ``d`` is strictly inside the circumdisc of ``a, b, c``, -1 outside, 0 on it.

    Orientation-independent; the base must not be collinear.
    """
    o = orient_h(a, b, c)
    if o == 0:
        raise ValueError("collinear base")
    return incircle_h(a, b, c, d) * o


def same_point_h(a, b) -> bool:
    return a[0] * b[2] == b[0] * a[2] and a[1] * b[2] == b[1] * a[2]


def dot_h(a, b, c) -> int:
    """Sign of ``(b - a) . (c - a)``."""
    ax, ay, aw = a
    bx, by, bw = b
    cx, cy, cw = c
    v1x, v1y = bx * aw - ax * bw, by * aw - ay * bw  # scaled by aw*bw
    v2x, v2y = cx * aw - ax * cw, cy * aw - ay * cw  # scaled by aw*cw
    d = v1x * v2x + v1y * v2y
    return (d > 0) - (d < 0)


class SegmentPosition(Enum):
    INSIDE_SEGMENT = "InsideSegment"
    ON_RAY_BEYOND_P = "OnRayBeyondP"
    ON_RAY_BEYOND_Q = "OnRayBeyondQ"
    NOT_ON_LINE = "NotOnLine"


def segment_position_h(p, q, r) -> SegmentPosition:
    if orient_h(p, q, r) != 0:
        return SegmentPosition.NOT_ON_LINE
    if dot_h(p, q, r) < 0:
        return SegmentPosition.ON_RAY_BEYOND_P
    if dot_h(q, p, r) < 0:
        return SegmentPosition.ON_RAY_BEYOND_Q
    return SegmentPosition.INSIDE_SEGMENT

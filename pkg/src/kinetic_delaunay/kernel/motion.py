"""Points moving along straight lines at unit speed, with exact rational data."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

Rational = Fraction


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to :class:`Fraction`.

    Floats are accepted but converted exactly (their binary value), so prefer
    strings when an exact decimal is intended.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    return Fraction(value)


def pythagorean_direction(m: int, k: int, quadrant: int = 0, swap: bool = False) -> tuple[Fraction, Fraction]:
    """Exact unit vector ((m²-k²)/(m²+k²), 2mk/(m²+k²)) mapped to a quadrant.

    ``quadrant`` in 0..3 flips signs, ``swap`` exchanges the components.
    """
    d = m * m + k * k
    if d == 0:
        raise ValueError("m and k cannot both be zero")
    u = Fraction(m * m - k * k, d)
    v = Fraction(2 * m * k, d)
    if swap:
        u, v = v, u
    if quadrant & 1:
        u = -u
    if quadrant & 2:
        v = -v
    return u, v


@dataclass(frozen=True)
class MovingPoint:
    """A point at ``(x0 + ux*t, y0 + uy*t)`` with ``ux² + uy² = 1`` exactly."""

    id: int
    x0: Fraction
    y0: Fraction
    ux: Fraction
    uy: Fraction

    def __post_init__(self):
        for name in ("x0", "y0", "ux", "uy"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.ux * self.ux + self.uy * self.uy != 1:
            raise ValueError(f"point {self.id}: direction ({self.ux}, {self.uy}) is not a unit vector")

    def position(self, t) -> tuple[Fraction, Fraction]:
        t = as_fraction(t)
        return (self.x0 + self.ux * t, self.y0 + self.uy * t)

    def position_float(self, t: float) -> tuple[float, float]:
        return (float(self.x0) + float(self.ux) * t, float(self.y0) + float(self.uy) * t)

    @cached_property
    def int_form(self) -> tuple[int, int, int, int, int]:
        """``(s, X0, X1, Y0, Y1)`` with ``x(t) = (X0 + X1 t)/s`` and ``y(t) = (Y0 + Y1 t)/s``."""
        s = 1
        for v in (self.x0, self.y0, self.ux, self.uy):
            s = s * v.denominator // math.gcd(s, v.denominator)
        return (
            s,
            int(self.x0 * s),
            int(self.ux * s),
            int(self.y0 * s),
            int(self.uy * s),
        )

    def homogeneous_at(self, t) -> tuple[int, int, int]:
        """Integer ``(X, Y, W)`` with ``W > 0`` and position ``(X/W, Y/W)`` at time ``t``."""
        t = as_fraction(t)
        a, b = t.numerator, t.denominator
        s, X0, X1, Y0, Y1 = self.int_form
        return (X0 * b + X1 * a, Y0 * b + Y1 * a, s * b)

    def translated(self, dx, dy) -> MovingPoint:
        return MovingPoint(self.id, self.x0 + as_fraction(dx), self.y0 + as_fraction(dy), self.ux, self.uy)

"""Motion model, exact predicates, event polynomials and root isolation."""

from .motion import MovingPoint, as_fraction, pythagorean_direction
from .poly import IsolatedRoot, compare_roots, sign_at_root
from .predicates import SegmentPosition
from .timepoly import (
    COCIRCULARITY,
    COLLINEARITY,
    TimePolynomial,
    cocircularity_poly,
    collinearity_poly,
    incircle_at,
    isolate_roots,
    on_segment_at,
    orient_at,
)

__all__ = [
    "COCIRCULARITY",
    "COLLINEARITY",
    "IsolatedRoot",
    "MovingPoint",
    "SegmentPosition",
    "TimePolynomial",
    "as_fraction",
    "cocircularity_poly",
    "collinearity_poly",
    "compare_roots",
    "incircle_at",
    "isolate_roots",
    "on_segment_at",
    "orient_at",
    "pythagorean_direction",
    "sign_at_root",
]

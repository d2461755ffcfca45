"""Event classification, crossings, red-blue envelopes and structural checks."""

from .classify import EventRecord, classify_events, color_classes
from .crossings import CrossingCensus, CrossingRecord, crossing_census, detect_crossings
from .envelope import RedBlueArrangement, build_redblue, delaunay_at, delaunay_throughout, envelope_at
from .lemmas import DoubleReport, LemmaReport, verify_crossing_lemmas, verify_double_crossings
from .redblue import TrichotomyReport, redblue_theorem_check
from .sampling import SamplingReport, clarkson_shor_experiment, exact_survival_probability

__all__ = [
    "CrossingCensus",
    "CrossingRecord",
    "DoubleReport",
    "EventRecord",
    "LemmaReport",
    "RedBlueArrangement",
    "SamplingReport",
    "TrichotomyReport",
    "build_redblue",
    "clarkson_shor_experiment",
    "classify_events",
    "color_classes",
    "crossing_census",
    "delaunay_at",
    "delaunay_throughout",
    "detect_crossings",
    "envelope_at",
    "exact_survival_probability",
    "redblue_theorem_check",
    "verify_crossing_lemmas",
    "verify_double_crossings",
]

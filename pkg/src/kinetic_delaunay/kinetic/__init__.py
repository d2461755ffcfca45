"""Kinetic maintenance of DT(P) by certificate scheduling."""

from .log import EventLog, LogEntry
from .simulator import (
    Certificate,
    CertificateQueue,
    SimulationResult,
    advance,
    build_initial,
    jitter_points,
    schedule,
    simulate,
)
from .static import brute_force_delaunay, static_delaunay
from .triangulation import KineticTriangulation, check, validate

__all__ = [
    "Certificate",
    "CertificateQueue",
    "EventLog",
    "KineticTriangulation",
    "LogEntry",
    "SimulationResult",
    "advance",
    "brute_force_delaunay",
    "build_initial",
    "check",
    "jitter_points",
    "schedule",
    "simulate",
    "static_delaunay",
    "validate",
]

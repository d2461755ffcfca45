"""Kinetic Delaunay triangulation of points moving at unit speed, with exact event handling."""

__version__ = "0.1.0"

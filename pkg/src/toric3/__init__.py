"""Exact lattice-polytope geometry, Minkowski length, and toric 3-fold codes."""

__version__ = "0.1.0"

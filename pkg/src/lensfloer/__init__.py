"""Lens space surgeries, d-invariants and knot Floer homology of L-space knots."""

__version__ = "0.1.0"

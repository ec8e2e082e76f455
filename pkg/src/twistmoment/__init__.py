"""Numerical laboratory for second moments of central derivatives of quadratic twists."""

__version__ = "0.1.0"

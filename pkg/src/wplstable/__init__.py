"""Exact computations on the weighted projective line of weight type (2,2,2,2)
and its stable category of vector bundles."""

__version__ = "0.1.0"

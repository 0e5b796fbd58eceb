"""Exact trace-ideal computations for affine semigroup rings and Ehrhart rings."""

__version__ = "0.1.0"

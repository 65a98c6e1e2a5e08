"""Exact computations with centralisers of nilpotent elements in gl, sp and so."""

__version__ = "0.1.0"

"""Exact classification of Bott towers and quasitoric manifolds over cubes."""

__version__ = "0.1.0"

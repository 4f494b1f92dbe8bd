"""Spectral clustering of simplicial complexes by filled-triangle conductance."""

__version__ = "0.1.0"

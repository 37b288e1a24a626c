"""Vertices and sources of modules over permutation groups in characteristic 2."""

__version__ = "0.1.0"

"""Chromatic thresholds of sparse random graphs: invariants, constructions and experiments."""

__version__ = "0.1.0"

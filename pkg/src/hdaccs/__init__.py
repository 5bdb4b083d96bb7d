"""Cube categories, labelled cubical complexes and a CCS semantics on them."""

__version__ = "0.1.0"

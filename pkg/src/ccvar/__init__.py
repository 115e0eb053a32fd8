"""Finite workbench for Boolean-algebra actions, monoids, matched pairs and clones."""

__version__ = "0.1.0"

"""Exact combinatorial toolkit for simplicial homotopy."""

__version__ = "0.1.0"

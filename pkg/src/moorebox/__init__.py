"""Exact cubical homological algebra over finitely generated abelian groups."""

__version__ = "0.1.0"

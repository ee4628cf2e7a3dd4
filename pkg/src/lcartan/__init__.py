"""Exact computations with Lie algebras of polynomial vector fields and their Lie-Cartan modules."""

__version__ = "0.1.0"

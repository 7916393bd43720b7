"""Quadratic Groebner bases for Artinian quadratic algebras with dim R_2 = 3."""

__version__ = "0.1.0"

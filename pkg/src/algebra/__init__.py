"""Exact commutative algebra: polynomials, Groebner bases, presented rings."""

"""Exact computations for quivers with relations, quiver moduli, McKay
quivers, abelian quotient singularities and matrix factorizations."""

__version__ = "0.1.0"

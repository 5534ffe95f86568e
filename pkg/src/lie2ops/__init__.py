"""Exact character computations for the operads of two compatible brackets (Lie2),
bihamiltonian algebras (P2) and their Koszul dual Com2."""

__version__ = "0.1.0"

"""Exactly solvable non-Hermitian Laguerre lattice with banded metrics."""

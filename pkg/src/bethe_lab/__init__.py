"""Exact computations for the Gaudin model on tensor powers of the gl_N vector
representation, its Bethe algebra, and the matching Calogero-Moser data."""

from .exact_core import BiSeries, Poly, RatFun, SparseMatrix
from .gaudin import GaudinConfig, hamiltonian, hamiltonian_set

__all__ = ["BiSeries", "GaudinConfig", "Poly", "RatFun", "SparseMatrix", "hamiltonian", "hamiltonian_set"]

__version__ = "0.1.0"

"""Exact Milnor algebras, residue pairings and Hodge-theoretic invariants of isolated hypersurface singularities."""

__version__ = "0.1.0"

from .errors import GermError
from .milnor import MilnorAlgebra, milnor_algebra
from .poly import Polynomial, parse_polynomial
from .residue import gram_matrix

__all__ = ["GermError", "MilnorAlgebra", "Polynomial", "gram_matrix", "milnor_algebra", "parse_polynomial",
           "__version__"]

"""Mutations of lattice polytopes and Laurent polynomials."""

from . import ehrhart, laurent, lattice, minkowski, mutation, search
from .ehrhart import DeltaVector, QuasiPolynomial, delta_vector, ehrhart_counts, is_palindromic, quasi_period
from .laurent import (
    DivisibilityError,
    LaurentPolynomial,
    algebraic_mutate,
    divide_exact,
    multiply,
    mutate_polynomial,
    newton_polytope,
    period_coeffs,
    power,
    substitute,
)
from .lattice import LatticePolytope, RationalPolytope, convex_hull, dual
from .minkowski import admissible_decompositions, minkowski_polynomials, minkowski_sum
from .mutation import MutationError, MutationSpec, compute_gh, enumerate_mutations, invert, mutate
from .search import bucket, connect

__version__ = "0.1.0"

__all__ = [
    "DeltaVector", "DivisibilityError", "LatticePolytope", "LaurentPolynomial", "MutationError",
    "MutationSpec", "QuasiPolynomial", "RationalPolytope", "admissible_decompositions",
    "algebraic_mutate", "bucket", "compute_gh", "connect", "convex_hull", "delta_vector",
    "divide_exact", "dual", "ehrhart", "ehrhart_counts", "enumerate_mutations", "invert",
    "is_palindromic", "laurent", "lattice", "minkowski", "minkowski_polynomials", "minkowski_sum",
    "multiply", "mutate", "mutate_polynomial", "mutation", "newton_polytope", "period_coeffs",
    "power", "quasi_period", "search", "substitute",
]

"""Exact integral linear algebra and lattice polytope geometry."""

from .equivalence import automorphisms, fingerprint, gl_equivalences, gl_equivalent
from .linalg import complete_to_unimodular, is_primitive, is_unimodular, primitive
from .polytope import (
    DimensionError,
    HalfSpace,
    LatticePolytope,
    RationalPolytope,
    apply_map,
    convex_hull,
    count_lattice_points,
    dual,
    gorenstein_index,
    height_range,
    is_canonical,
    is_fano,
    is_reflexive,
    lattice_points,
    normalized_volume,
    relative_normalized_volume,
    slice_at_height,
    slices,
    width,
)

__all__ = [
    "DimensionError",
    "HalfSpace",
    "LatticePolytope",
    "RationalPolytope",
    "apply_map",
    "automorphisms",
    "complete_to_unimodular",
    "convex_hull",
    "count_lattice_points",
    "dual",
    "fingerprint",
    "gl_equivalences",
    "gl_equivalent",
    "gorenstein_index",
    "height_range",
    "is_canonical",
    "is_fano",
    "is_primitive",
    "is_reflexive",
    "is_unimodular",
    "lattice_points",
    "normalized_volume",
    "primitive",
    "relative_normalized_volume",
    "slice_at_height",
    "slices",
    "width",
]

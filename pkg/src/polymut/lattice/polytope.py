"""Lattice and rational polytopes with exact vertex and facet descriptions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import ceil, floor
from typing import Iterable, Sequence

from .hull import facets_of_points, vertices_of_halfspaces
from .linalg import (
    _column_reduce,
    check_unimodular,
    content,
    dot,
    integer_inverse,
    is_primitive,
    kernel_basis,
    lcm,
    rank,
    transpose,
    vec_mat,
    vec_sub,
)
from .points import count_integer_points, integer_points


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class HalfSpace:
    """The closed halfspace ``<normal, x> >= level``."""

    normal: tuple[int, ...]
    level: int

    def value(self, x) -> int:
        return dot(self.normal, x) - self.level

    def contains(self, x) -> bool:
        return self.value(x) >= 0


def _as_points(points: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    pts = sorted({tuple(int(c) for c in p) for p in points})
    if not pts:
        raise ValueError("cannot take the convex hull of no points")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DimensionError("points have different dimensions")
    return pts


class LatticePolytope:
    """Convex hull of finitely many lattice points.

    Lower-dimensional polytopes are handled in an affine lattice chart of their
    affine hull, so facet normals are always primitive in the relevant lattice.
    Instances are immutable; equality is equality of vertex sets.
    """

    def __init__(self, points: Iterable[Sequence[int]]):
        pts = _as_points(points)
        n = len(pts[0])
        p0 = pts[0]
        k = rank([vec_sub(p, p0) for p in pts[1:]]) if len(pts) > 1 else 0
        self.ambient_dim = n
        self.dim = k
        if k < n:
            diffs = [vec_sub(p, p0) for p in pts[1:]]
            eqs = kernel_basis(diffs, n) if diffs else [tuple(int(i == j) for j in range(n)) for i in range(n)]
            cols, piv = _column_reduce(eqs, n)
            U = transpose(cols)
            self._U = U
            self._Uinv = integer_inverse(U)
            self._fixed = vec_mat(p0, transpose(self._Uinv))[: n - k]
            self.equations = tuple((e, dot(e, p0)) for e in eqs)
        else:
            self._U = self._Uinv = None
            self._fixed = ()
            self.equations = ()
        local = [self.chart(p) for p in pts]
        if k == 0:
            self._local_facets: list[tuple[tuple[int, ...], int]] = []
            self.vertices = (p0,)
            self._vertex_masks = [0]
            return
        facets, incidence = facets_of_points(local)
        masks = [0] * len(pts)
        for f, inc in enumerate(incidence):
            for i in range(len(pts)):
                if inc >> i & 1:
                    masks[i] |= 1 << f
        vert_idx = []
        for i in range(len(pts)):
            common = (1 << len(pts)) - 1
            for f, inc in enumerate(incidence):
                if masks[i] >> f & 1:
                    common &= inc
            if common == 1 << i:
                vert_idx.append(i)
        self.vertices = tuple(pts[i] for i in vert_idx)
        self._local_facets = facets
        # facet incidence re-indexed by vertex position
        self._vertex_masks = []
        for inc in incidence:
            m = 0
            for j, i in enumerate(vert_idx):
                if inc >> i & 1:
                    m |= 1 << j
            self._vertex_masks.append(m)

    # -- charts ---------------------------------------------------------
    def chart(self, x) -> tuple[int, ...]:
        """Coordinates of a point of the affine hull in its lattice chart."""
        if self._Uinv is None:
            return tuple(x)
        y = vec_mat(x, transpose(self._Uinv))
        return tuple(y[self.ambient_dim - self.dim:])

    def unchart(self, y) -> tuple[int, ...]:
        if self._U is None:
            return tuple(y)
        full = tuple(self._fixed) + tuple(y)
        return vec_mat(full, transpose(self._U))

    def _in_affine_hull(self, x) -> bool:
        return all(dot(e, x) == c for e, c in self.equations)

    # -- facets ---------------------------------------------------------
    @property
    def local_facets(self) -> list[tuple[tuple[int, ...], int]]:
        """Facets ``a . y >= c`` in chart coordinates (primitive normals)."""
        return list(self._local_facets)

    @cached_property
    def facets(self) -> tuple[HalfSpace, ...]:
        """Facet halfspaces in ambient coordinates.

        For lower-dimensional polytopes these are the relative facets lifted
        through the chart; together with ``equations`` they describe P.
        """
        out = []
        n, k = self.ambient_dim, self.dim
        for a, c in self._local_facets:
            if self._Uinv is None:
                out.append(HalfSpace(tuple(a), c))
                continue
            tail = self._Uinv[n - k:]
            normal = vec_mat(a, tail)
            g = content(normal)
            out.append(HalfSpace(tuple(x // g for x in normal), c // g))
        return tuple(out)

    def facet_vertices(self) -> list[tuple[tuple[int, ...], ...]]:
        """Vertex tuples of each facet, in the order of ``facets``."""
        return [
            tuple(v for j, v in enumerate(self.vertices) if m >> j & 1)
            for m in self._vertex_masks
        ]

    @cached_property
    def edges(self) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
        """Pairs of vertices spanning an edge."""
        nv = len(self.vertices)
        if self.dim == 0:
            return ()
        if self.dim == 1:
            return ((self.vertices[0], self.vertices[1]),)
        full = (1 << nv) - 1
        out = []
        for i in range(nv):
            for j in range(i + 1, nv):
                common = full
                for m in self._vertex_masks:
                    if m >> i & 1 and m >> j & 1:
                        common &= m
                if common == (1 << i) | (1 << j):
                    out.append((self.vertices[i], self.vertices[j]))
        return tuple(out)

    # -- membership -----------------------------------------------------
    def contains(self, x) -> bool:
        x = tuple(x)
        if not self._in_affine_hull(x):
            return False
        y = self.chart(x)
        if self.dim == 0:
            return x == self.vertices[0]
        return all(dot(a, y) >= c for a, c in self._local_facets)

    def contains_in_relative_interior(self, x) -> bool:
        x = tuple(x)
        if not self._in_affine_hull(x):
            return False
        if self.dim == 0:
            return x == self.vertices[0]
        y = self.chart(x)
        return all(dot(a, y) > c for a, c in self._local_facets)

    # -- lattice points ---------------------------------------------------
    def dilation_system(self, m: int = 1):
        """Integer inequalities ``A y >= b`` and box for ``m P`` in chart coordinates."""
        A = [a for a, _ in self._local_facets]
        b = [m * c for _, c in self._local_facets]
        local = [self.chart(v) for v in self.vertices]
        lo = [m * min(col) for col in zip(*local)]
        hi = [m * max(col) for col in zip(*local)]
        return A, b, lo, hi

    @cached_property
    def _lattice_points(self) -> tuple[tuple[int, ...], ...]:
        if self.dim == 0:
            return self.vertices
        A, b, lo, hi = self.dilation_system(1)
        return tuple(sorted(self.unchart(y) for y in integer_points(A, b, lo, hi)))

    def lattice_points(self) -> tuple[tuple[int, ...], ...]:
        return self._lattice_points

    def interior_lattice_points(self) -> list[tuple[int, ...]]:
        return [p for p in self._lattice_points if self.contains_in_relative_interior(p)]

    # -- dunder -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, LatticePolytope) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"LatticePolytope({list(self.vertices)})"

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    def translate(self, v) -> "LatticePolytope":
        return LatticePolytope([tuple(a + b for a, b in zip(p, v)) for p in self.vertices])

    def dilate(self, k: int) -> "LatticePolytope":
        if k < 0:
            raise ValueError("dilation factor must be non-negative")
        return LatticePolytope([tuple(k * a for a in p) for p in self.vertices])


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    return LatticePolytope(points)


class RationalPolytope:
    """A full-dimensional polytope with rational vertices.

    ``halfspaces`` are ``(normal, level)`` pairs meaning ``<normal, x> >= level``
    with integer normals and rational levels; ``denominator`` is the least
    positive r with ``r Q`` a lattice polytope.
    """

    def __init__(self, vertices=None, halfspaces=None):
        if vertices is None and halfspaces is None:
            raise ValueError("need vertices or halfspaces")
        if vertices is None:
            vertices = vertices_of_halfspaces(halfspaces)
        verts = sorted({tuple(Fraction(c) for c in v) for v in vertices})
        self.vertices = tuple(verts)
        self.ambient_dim = len(verts[0])
        self.denominator = reduce(lcm, (c.denominator for v in verts for c in v), 1)
        if halfspaces is None:
            r = self.denominator
            scaled = [tuple(int(c * r) for c in v) for v in verts]
            if rank([vec_sub(p, scaled[0]) for p in scaled[1:]]) < self.ambient_dim:
                raise DimensionError("rational polytope must be full-dimensional")
            facets, _ = facets_of_points(scaled)
            halfspaces = [(a, Fraction(c, r)) for a, c in facets]
        self.halfspaces = tuple((tuple(int(x) for x in a), Fraction(c)) for a, c in halfspaces)
        self.dim = self.ambient_dim

    def dilation_system(self, m: int = 1):
        A = [a for a, _ in self.halfspaces]
        b = [ceil(m * c) for _, c in self.halfspaces]
        lo = [floor(m * min(col)) for col in zip(*self.vertices)]
        hi = [ceil(m * max(col)) for col in zip(*self.vertices)]
        return A, b, lo, hi

    def contains(self, x) -> bool:
        return all(dot(a, x) >= c for a, c in self.halfspaces)

    @property
    def is_lattice(self) -> bool:
        return self.denominator == 1

    def to_lattice_polytope(self, scale: int | None = None) -> LatticePolytope:
        """The lattice polytope ``scale * Q`` (default: the denominator)."""
        r = self.denominator if scale is None else scale
        pts = [tuple(c * r for c in v) for v in self.vertices]
        if any(c.denominator != 1 for v in pts for c in v):
            raise ValueError(f"{r} * Q is not a lattice polytope")
        return LatticePolytope([tuple(int(c) for c in v) for v in pts])

    def __eq__(self, other):
        return isinstance(other, RationalPolytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self) -> str:
        vs = ["(" + ",".join(str(c) for c in v) + ")" for v in self.vertices]
        return f"RationalPolytope([{', '.join(vs)}], r={self.denominator})"


def dual(P: LatticePolytope) -> RationalPolytope:
    """``{u : <u, v> >= -1 for all v in P}``; needs 0 strictly inside P."""
    if not P.is_full_dimensional:
        raise DimensionError("dual is unbounded: polytope is not full-dimensional")
    if any(f.level >= 0 for f in P.facets):
        raise ValueError("dual is unbounded: origin is not strictly interior")
    verts = [tuple(Fraction(a, -f.level) for a in f.normal) for f in P.facets]
    halfspaces = [(v, Fraction(-1)) for v in P.vertices]
    return RationalPolytope(vertices=verts, halfspaces=halfspaces)


def lattice_points(P, m: int = 1) -> list[tuple[int, ...]]:
    """Lattice points of the dilation ``m P`` (lattice or rational polytope)."""
    if m < 0:
        raise ValueError("dilation must be non-negative")
    if m == 0:
        return [tuple([0] * P.ambient_dim)]
    if isinstance(P, LatticePolytope):
        Q = P if m == 1 else P.dilate(m)
        return list(Q.lattice_points())
    A, b, lo, hi = P.dilation_system(m)
    return integer_points(A, b, lo, hi)


def count_lattice_points(P, m: int = 1) -> int:
    if m == 0:
        return 1
    if isinstance(P, LatticePolytope) and not P.is_full_dimensional:
        return len(lattice_points(P, m))
    A, b, lo, hi = P.dilation_system(m)
    return count_integer_points(A, b, lo, hi)


# -- Fano-type predicates -------------------------------------------------

def _origin_strictly_interior(P: LatticePolytope) -> bool:
    return P.is_full_dimensional and all(f.level < 0 for f in P.facets)


def is_fano(P: LatticePolytope) -> bool:
    """Full-dimensional, origin strictly interior, primitive vertices."""
    return _origin_strictly_interior(P) and all(is_primitive(v) for v in P.vertices)


def is_reflexive(P: LatticePolytope) -> bool:
    return is_fano(P) and all(f.level == -1 for f in P.facets)


def is_canonical(P: LatticePolytope) -> bool:
    if not is_fano(P):
        return False
    origin = tuple([0] * P.ambient_dim)
    return P.interior_lattice_points() == [origin]


def gorenstein_index(P: LatticePolytope) -> int:
    return dual(P).denominator


# -- widths and slices ----------------------------------------------------

def _check_width_vector(w) -> tuple[int, ...]:
    w = tuple(int(x) for x in w)
    if not is_primitive(w):
        raise ValueError(f"width vector {w} is not primitive")
    return w


def height_range(P: LatticePolytope, w) -> tuple[int, int]:
    """``(h_min, h_max)`` of ``<w, .>`` over P."""
    w = _check_width_vector(w)
    hs = [dot(w, v) for v in P.vertices]
    return min(hs), max(hs)


def width(P: LatticePolytope, w) -> int:
    lo, hi = height_range(P, w)
    return hi - lo


def slice_at_height(P: LatticePolytope, w, h: int) -> LatticePolytope | None:
    """Convex hull of the lattice points of P at height h; ``None`` if empty."""
    w = _check_width_vector(w)
    pts = [p for p in P.lattice_points() if dot(w, p) == h]
    return LatticePolytope(pts) if pts else None


def slices(P: LatticePolytope, w) -> dict[int, LatticePolytope | None]:
    """All slices ``h_min <= h <= h_max`` keyed by height."""
    w = _check_width_vector(w)
    lo, hi = height_range(P, w)
    groups: dict[int, list] = {h: [] for h in range(lo, hi + 1)}
    for p in P.lattice_points():
        groups[dot(w, p)].append(p)
    return {h: (LatticePolytope(ps) if ps else None) for h, ps in groups.items()}


# -- volume ---------------------------------------------------------------

def _relative_volume(P: LatticePolytope) -> int:
    if P.dim == 0:
        return 1
    if P.dim == 1:
        a, b = (P.chart(v)[0] for v in P.vertices)
        return abs(a - b)
    apex = P.chart(P.vertices[0])
    total = 0
    for (a, c), verts in zip(P.local_facets, P.facet_vertices()):
        dist = dot(a, apex) - c
        if dist:
            total += dist * _relative_volume(LatticePolytope(verts))
    return total


def normalized_volume(P: LatticePolytope) -> int:
    """``n!`` times the Euclidean volume of a full-dimensional polytope."""
    if not P.is_full_dimensional:
        raise DimensionError("normalized volume needs a full-dimensional polytope")
    return _relative_volume(P)


def relative_normalized_volume(P: LatticePolytope) -> int:
    """Normalized volume measured in the affine lattice of P's own hull."""
    return _relative_volume(P)


# -- maps -----------------------------------------------------------------

def apply_map(P: LatticePolytope, M) -> LatticePolytope:
    """Image of P under ``v -> v M`` for a unimodular integer matrix M."""
    M = check_unimodular(M)
    if len(M) != P.ambient_dim:
        raise DimensionError("matrix size does not match the polytope dimension")
    return LatticePolytope([vec_mat(v, M) for v in P.vertices])

"""Minkowski sums and differences, admissible decompositions of lattice polygons,
and Minkowski polynomials on three-dimensional reflexive polytopes.

A lattice polygon is determined up to translation by its boundary: the map
from each primitive counter-clockwise edge direction to the lattice length of
that edge.  Minkowski addition adds these maps, so decompositions become
integer knapsack problems over the edge maps of the admissible pieces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from math import comb, gcd
from typing import Sequence

from .laurent import LaurentPolynomial, multiply, substitute
from .lattice import LatticePolytope, automorphisms, convex_hull, is_reflexive
from .lattice.linalg import lattice_index, vec_add, vec_sub


class MinkowskiError(ValueError):
    pass


def minkowski_sum(A: LatticePolytope | None, B: LatticePolytope | None) -> LatticePolytope | None:
    """``A + B``; None stands for the empty polytope and absorbs everything."""
    if A is None or B is None:
        return None
    if A.ambient_dim != B.ambient_dim:
        raise ValueError("polytopes live in different dimensions")
    return convex_hull(vec_add(a, b) for a in A.vertices for b in B.vertices)


def minkowski_difference_points(C: LatticePolytope, B: LatticePolytope) -> list[tuple[int, ...]]:
    """All lattice points v with ``v + B`` contained in C."""
    if C.ambient_dim != B.ambient_dim:
        raise ValueError("polytopes live in different dimensions")
    b0 = B.vertices[0]
    out = []
    for p in C.lattice_points():
        v = vec_sub(p, b0)
        if all(C.contains(vec_add(v, b)) for b in B.vertices[1:]):
            out.append(v)
    return out


# -- planar edge maps -----------------------------------------------------

def _det(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


def edge_map(Q: LatticePolytope) -> dict[tuple[int, int], int]:
    """Counter-clockwise primitive edge directions and lattice lengths, in chart coordinates."""
    if Q.dim != 2:
        raise ValueError("edge maps are defined for polygons only")
    out = {}
    for (a, _), verts in zip(Q.local_facets, Q.facet_vertices()):
        p, q = (Q.chart(v) for v in verts)
        d = (a[1], -a[0])
        out[d] = gcd(q[0] - p[0], q[1] - p[1])
    return out


def _half(d) -> int:
    return 0 if d[1] > 0 or (d[1] == 0 and d[0] > 0) else 1


def _angle_cmp(a, b) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    return -_det(a, b)


_angle_key = cmp_to_key(_angle_cmp)


def _pieces(directions: Sequence[tuple[int, int]]) -> list[tuple]:
    """Admissible pieces whose edges use only the given directions.

    Each piece is ``(kind, n, edge_map_items)``.
    """
    dset = set(directions)
    out = []
    for d in sorted(dset):
        neg = (-d[0], -d[1])
        if neg in dset and d < neg:
            out.append(("segment", 1, ((d, 1), (neg, 1))))
    for d1, d2, d3 in itertools.combinations(sorted(dset), 3):
        a, b, c = _det(d2, d3), _det(d3, d1), _det(d1, d2)
        if not ((a > 0 and b > 0 and c > 0) or (a < 0 and b < 0 and c < 0)):
            continue
        a, b, c = abs(a), abs(b), abs(c)
        g = gcd(gcd(a, b), c)
        a, b, c = a // g, b // g, c // g
        lengths = sorted((a, b, c))
        if lengths[0] != 1 or lengths[1] != 1:
            continue
        n = lengths[2]
        base = max(((a, d1), (b, d2), (c, d3)))[1]
        other = d1 if base != d1 else d2
        if abs(_det(base, other)) != 1:
            continue
        out.append(("triangle", n, tuple(sorted(((d1, a), (d2, b), (d3, c))))))
    return out


@lru_cache(maxsize=4096)
def _decompose(target: frozenset) -> tuple[tuple[tuple, ...], ...]:
    """Multisets of pieces summing to the edge map ``target`` and passing the lattice test."""
    tmap = dict(target)
    dirs = sorted(tmap)
    pieces = _pieces(dirs)
    found = []

    def rec(i, remaining, chosen):
        if not any(remaining.values()):
            found.append(tuple(chosen))
            return
        if i == len(pieces):
            return
        kind, n, items = pieces[i]
        k = min(remaining[d] // l for d, l in items)
        for mult in range(k, -1, -1):
            rem = dict(remaining)
            for d, l in items:
                rem[d] -= mult * l
            rec(i + 1, rem, chosen + [pieces[i]] * mult)

    rec(0, tmap, [])
    good = []
    for combo in found:
        gens = []
        for kind, n, items in combo:
            gens.extend(d for d, _ in items[:2])
        if len(gens) >= 2 and lattice_index(gens, 2) == 1:
            good.append(combo)
    return tuple(sorted(good))


# -- summands -------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Summand:
    """A length-one segment or an A_n triangle, anchored at its lexicographically least vertex."""

    kind: str
    n: int
    vertices: tuple[tuple[int, ...], ...]
    apex: tuple[int, ...] | None = None
    base: tuple[tuple[int, ...], ...] = ()

    @property
    def polytope(self) -> LatticePolytope:
        return convex_hull(self.vertices)


def _summand_from_piece(piece, lift) -> Summand:
    kind, n, items = piece
    emap = dict(items)
    if kind == "segment":
        d = items[0][0]
        pts = sorted([lift((0, 0)), lift(d)])
        anchor = pts[0]
        return Summand("segment", 1, tuple(vec_sub(p, anchor) for p in pts), None, tuple(vec_sub(p, anchor) for p in pts))
    base_dir = max(emap, key=lambda d: (emap[d], d))
    dirs = sorted(emap, key=_angle_key)
    i = dirs.index(base_dir)
    nxt = dirs[(i + 1) % 3]
    base = [(k * base_dir[0], k * base_dir[1]) for k in range(n + 1)]
    apex = (base[-1][0] + nxt[0], base[-1][1] + nxt[1])
    amb_base = [lift(p) for p in base]
    amb_apex = lift(apex)
    anchor = min(amb_base + [amb_apex])
    verts = tuple(sorted({vec_sub(p, anchor) for p in (amb_base[0], amb_base[-1], amb_apex)}))
    return Summand(
        "triangle",
        n,
        verts,
        vec_sub(amb_apex, anchor),
        tuple(vec_sub(p, anchor) for p in amb_base),
    )


def piece_polynomial(S: Summand) -> LaurentPolynomial:
    """``x^v + x^w`` for a segment, ``x^u + sum C(n,k) x^(v_k)`` for an A_n triangle."""
    if S.kind == "segment":
        return LaurentPolynomial({S.vertices[0]: 1, S.vertices[1]: 1})
    terms = {S.apex: 1}
    for k, v in enumerate(S.base):
        terms[v] = comb(S.n, k)
    return LaurentPolynomial(terms)


@dataclass(frozen=True)
class LatticeDecomposition:
    """``Q = offset + sum(summands)`` with every summand anchored at the origin."""

    summands: tuple[Summand, ...]
    offset: tuple[int, ...]

    def polytope(self) -> LatticePolytope:
        P = convex_hull([self.offset])
        for S in self.summands:
            P = minkowski_sum(P, S.polytope)
        return P

    def polynomial(self) -> LaurentPolynomial:
        f = LaurentPolynomial.monomial(self.offset)
        for S in self.summands:
            f = multiply(f, piece_polynomial(S))
        return f

    def generators(self) -> list[tuple[int, ...]]:
        """Difference vectors generating the summed affine lattices."""
        gens = []
        for S in self.summands:
            pts = (S.apex,) + S.base if S.kind == "triangle" else S.vertices
            gens.extend(vec_sub(p, pts[0]) for p in pts[1:])
        return gens


def _lifter(Q: LatticePolytope):
    zero = Q.unchart((0, 0))
    return lambda y: vec_sub(Q.unchart(y), zero)


def admissible_decompositions(Q: LatticePolytope) -> list[LatticeDecomposition]:
    """One representative per equivalence class of admissible lattice Minkowski decompositions."""
    if Q.dim != 2:
        raise ValueError("admissible decompositions are defined for polygons")
    lift = _lifter(Q)
    offset = min(Q.vertices)
    out = []
    for combo in _decompose(frozenset(edge_map(Q).items())):
        summands = tuple(sorted(_summand_from_piece(p, lift) for p in combo))
        out.append(LatticeDecomposition(summands, offset))
    return out


def is_admissible_piece(Q: LatticePolytope) -> bool:
    """Whether Q is a length-one segment or an A_n triangle."""
    pts = Q.lattice_points()
    if Q.dim == 1:
        return len(pts) == 2
    if Q.dim != 2 or len(Q.vertices) != 3:
        return False
    lengths = sorted(edge_map(Q).values())
    return lengths[0] == lengths[1] == 1 and len(pts) == lengths[2] + 2


# -- Minkowski polynomials ------------------------------------------------

def _facet_polytopes(P: LatticePolytope) -> list[LatticePolytope]:
    return [convex_hull(vs) for vs in P.facet_vertices()]


def facet_polynomials(P: LatticePolytope) -> list[list[LaurentPolynomial]]:
    """For every facet, the distinct facet polynomials of its decomposition classes."""
    out = []
    for F in _facet_polytopes(P):
        polys = []
        for dec in admissible_decompositions(F):
            f = dec.polynomial()
            if f not in polys:
                polys.append(f)
        out.append(polys)
    return out


def _canonical_key(f: LaurentPolynomial, maps) -> tuple:
    return min(tuple(sorted(substitute(f, M).terms.items())) for M in maps)


def minkowski_polynomials(P: LatticePolytope, up_to_symmetry: bool = False) -> list[LaurentPolynomial]:
    """All Minkowski polynomials with Newton polytope P (empty if a facet is indecomposable).

    With ``up_to_symmetry`` polynomials related by an automorphism of P are
    identified and one representative of each orbit is kept.
    """
    if P.ambient_dim != 3 or not is_reflexive(P):
        raise MinkowskiError("Minkowski polynomials need a three-dimensional reflexive polytope")
    choices = facet_polynomials(P)
    if any(not c for c in choices):
        return []
    result = []
    for combo in itertools.product(*choices):
        coeffs: dict = {}
        for fpoly in combo:
            for e, c in fpoly.terms.items():
                if coeffs.setdefault(e, c) != c:
                    raise MinkowskiError(f"facets disagree on the coefficient of x^{e}")
        result.append(LaurentPolynomial(coeffs, 3))
    result = sorted(set(result), key=lambda f: sorted(f.terms.items()))
    if up_to_symmetry:
        maps = automorphisms(P)
        seen = {}
        for f in result:
            seen.setdefault(_canonical_key(f, maps), f)
        result = list(seen.values())
    return result


def is_minkowski_polynomial(f: LaurentPolynomial) -> bool:
    if f.nvars != 3 or f.constant_term() != 0:
        return False
    from .laurent import newton_polytope

    P = newton_polytope(f)
    if not P.is_full_dimensional or not is_reflexive(P):
        return False
    for F, options in zip(_facet_polytopes(P), facet_polynomials(P)):
        restricted = LaurentPolynomial({e: f.coefficient(e) for e in F.lattice_points()}, 3)
        if restricted not in options:
            return False
    return True

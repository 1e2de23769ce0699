"""GL(n, Z)-equivalence of full-dimensional lattice polytopes."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .linalg import Matrix, dot, inverse, is_unimodular, rank, vec_mat
from .polytope import DimensionError, LatticePolytope, count_lattice_points, normalized_volume


def fingerprint(P: LatticePolytope) -> tuple:
    """Cheap GL(n, Z)-invariants used to reject non-equivalent pairs early."""
    if not P.is_full_dimensional:
        raise DimensionError("fingerprints are defined for full-dimensional polytopes")
    widths = []
    for f in P.facets:
        hs = [dot(f.normal, v) for v in P.vertices]
        widths.append(max(hs) - min(hs))
    return (
        P.ambient_dim,
        len(P.vertices),
        len(P.facets),
        normalized_volume(P),
        len(P.lattice_points()),
        count_lattice_points(P, 2),
        tuple(sorted(widths)),
        tuple(sorted(f.level for f in P.facets)),
    )


def _vertex_signatures(P: LatticePolytope) -> list[tuple]:
    sigs = []
    for v in P.vertices:
        sigs.append(tuple(sorted(f.level for f in P.facets if f.value(v) == 0)))
    return sigs


def _basis_indices(vertices) -> list[int]:
    chosen: list[int] = []
    for i, v in enumerate(vertices):
        if rank([vertices[j] for j in chosen] + [v]) > len(chosen):
            chosen.append(i)
            if len(chosen) == len(v):
                break
    return chosen


def gl_equivalences(P: LatticePolytope, Q: LatticePolytope) -> Iterator[Matrix]:
    """Yield every unimodular M with ``apply_map(P, M) == Q``.

    Vertices are taken in lexicographic order; a fixed spanning tuple of P's
    vertices is matched against ordered tuples of Q's vertices with the same
    incident-facet signature.
    """
    if P.ambient_dim != Q.ambient_dim:
        return
    if not (P.is_full_dimensional and Q.is_full_dimensional):
        raise DimensionError("equivalence search needs full-dimensional polytopes")
    if len(P.vertices) != len(Q.vertices) or fingerprint(P) != fingerprint(Q):
        return
    n = P.ambient_dim
    VP, VQ = P.vertices, Q.vertices
    target = set(VQ)
    basis = _basis_indices(VP)
    Binv = inverse([VP[i] for i in basis])
    sigP, sigQ = _vertex_signatures(P), _vertex_signatures(Q)
    options = [[j for j in range(len(VQ)) if sigQ[j] == sigP[i]] for i in basis]

    def extend(chosen: list[int]):
        if len(chosen) == n:
            rows = [VQ[j] for j in chosen]
            M = []
            for i in range(n):
                row = []
                for k in range(n):
                    x = sum(Binv[i][t] * rows[t][k] for t in range(n))
                    if not isinstance(x, int) and Fraction(x).denominator != 1:
                        return
                    row.append(int(x))
                M.append(tuple(row))
            M = tuple(M)
            if is_unimodular(M) and {vec_mat(v, M) for v in VP} == target:
                yield M
            return
        for j in options[len(chosen)]:
            if j not in chosen:
                yield from extend(chosen + [j])

    yield from extend([])


def gl_equivalent(P: LatticePolytope, Q: LatticePolytope) -> Matrix | None:
    """A unimodular M with ``apply_map(P, M) == Q``, or None."""
    return next(gl_equivalences(P, Q), None)


def automorphisms(P: LatticePolytope) -> list[Matrix]:
    return list(gl_equivalences(P, P))

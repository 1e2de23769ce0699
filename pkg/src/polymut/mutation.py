"""Combinatorial mutations of lattice polytopes.

For a primitive width vector ``w`` and a factor ``F`` at height zero, the
mutation keeps the slices at non-negative heights, stretches them by ``h F``,
and replaces every negative-height slice by a polytope ``G_h`` with
``G_h + (-h) F`` squeezed between the vertices and the slice itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .lattice import (
    LatticePolytope,
    RationalPolytope,
    convex_hull,
    gl_equivalent,
    height_range,
    is_primitive,
    slice_at_height,
)
from .lattice.linalg import dot, identity, vec_add, vec_scale, vec_sub
from .lattice.points import integer_points
from .minkowski import minkowski_difference_points, minkowski_sum


class MutationError(ValueError):
    pass


def _width_vector(w) -> tuple[int, ...]:
    w = tuple(int(x) for x in w)
    if not is_primitive(w):
        raise MutationError(f"width vector {w} is not primitive")
    return w


def _factor(F, w) -> LatticePolytope:
    if not isinstance(F, LatticePolytope):
        F = convex_hull(F)
    if any(dot(w, v) for v in F.vertices):
        raise MutationError("factor must lie at height 0")
    return F


@dataclass(frozen=True, eq=False)
class MutationSpec:
    """Width vector, factor and the polytopes G_h at negative heights (None is empty)."""

    w: tuple[int, ...]
    F: LatticePolytope
    gh: Mapping[int, LatticePolytope | None] = field(default_factory=dict)

    @property
    def width_of_factor(self) -> int:
        return len(self.F.vertices)


def _vertices_at(P: LatticePolytope, w, h: int) -> list[tuple[int, ...]]:
    return [v for v in P.vertices if dot(w, v) == h]


def compute_gh(P: LatticePolytope, w, F) -> dict[int, LatticePolytope | None]:
    """The canonical G_h for each negative height, or MutationError if none exists."""
    w = _width_vector(w)
    F = _factor(F, w)
    hmin, _ = height_range(P, w)
    out: dict[int, LatticePolytope | None] = {}
    for h in range(hmin, 0):
        verts = _vertices_at(P, w, h)
        if not verts:
            out[h] = None
            continue
        kF = F.dilate(-h)
        pts = minkowski_difference_points(slice_at_height(P, w, h), kF)
        if not pts:
            raise MutationError(f"no factorization at height {h}")
        G = convex_hull(pts)
        covered = minkowski_sum(G, kF)
        if not all(covered.contains(v) for v in verts):
            raise MutationError(f"no factorization at height {h}")
        out[h] = G
    return out


def check_gh(P: LatticePolytope, w, F, gh: Mapping[int, LatticePolytope | None]) -> None:
    """Raise MutationError unless ``gh`` satisfies the containments at every negative height."""
    w = _width_vector(w)
    F = _factor(F, w)
    hmin, _ = height_range(P, w)
    for h in range(hmin, 0):
        G = gh.get(h)
        verts = _vertices_at(P, w, h)
        if G is None:
            if verts:
                raise MutationError(f"G_{h} is empty but P has vertices at height {h}")
            continue
        if any(dot(w, v) != h for v in G.vertices):
            raise MutationError(f"G_{h} does not lie at height {h}")
        S = slice_at_height(P, w, h)
        total = minkowski_sum(G, F.dilate(-h))
        if S is None or not all(S.contains(v) for v in total.vertices):
            raise MutationError(f"G_{h} + {-h}F is not contained in the slice at height {h}")
        if not all(total.contains(v) for v in verts):
            raise MutationError(f"G_{h} + {-h}F misses a vertex at height {h}")


def mutate(P: LatticePolytope, w, F, gh: Mapping[int, LatticePolytope | None] | None = None) -> LatticePolytope:
    """``mut_w(P, F)``; with explicit ``gh`` the containments are checked first."""
    w = _width_vector(w)
    F = _factor(F, w)
    if gh is None:
        gh = compute_gh(P, w, F)
    else:
        check_gh(P, w, F, gh)
    hmin, hmax = height_range(P, w)
    points: list[tuple[int, ...]] = []
    for h in range(hmin, 0):
        G = gh.get(h)
        if G is not None:
            points.extend(G.vertices)
    for h in range(0, hmax + 1):
        S = slice_at_height(P, w, h)
        if S is None:
            continue
        for v in S.vertices:
            for f in F.vertices:
                points.append(vec_add(v, vec_scale(h, f)))
    return convex_hull(points)


def mutation_spec(P: LatticePolytope, w, F) -> MutationSpec:
    w = _width_vector(w)
    F = _factor(F, w)
    return MutationSpec(w, F, compute_gh(P, w, F))


def apply_spec(P: LatticePolytope, spec: MutationSpec) -> LatticePolytope:
    return mutate(P, spec.w, spec.F, spec.gh)


def invert(P: LatticePolytope, w, F) -> tuple[LatticePolytope, MutationSpec]:
    """``(Q, spec)`` where ``Q = mut_w(P, F)`` and ``apply_spec(Q, spec) == P``.

    The inverse uses ``-w``, the same factor, and the slices of P as its G_h.
    """
    w = _width_vector(w)
    F = _factor(F, w)
    Q = mutate(P, w, F)
    neg = tuple(-x for x in w)
    qmin, _ = height_range(Q, neg)
    gh = {h: slice_at_height(P, w, -h) for h in range(qmin, 0)}
    return Q, MutationSpec(neg, F, gh)


# -- factor enumeration ------------------------------------------------------

def _primitive_direction(a, b) -> tuple[tuple[int, ...], int]:
    from math import gcd

    d = vec_sub(b, a)
    g = 0
    for x in d:
        g = gcd(g, x)
    return tuple(x // g for x in d), g


def summand_factors(E: LatticePolytope, k: int) -> list[LatticePolytope]:
    """Positive-dimensional lattice polytopes F (anchored at the origin) with kF a Minkowski summand of E.

    An edge-length function on E that closes up around every cycle of the
    edge graph defines a summand; the search assigns lengths ``m_e <= l_e / k``
    along a spanning tree and checks the remaining edges.
    """
    if E.dim == 0:
        return []
    verts = list(E.vertices)
    index = {v: i for i, v in enumerate(verts)}
    adj: dict[int, list[tuple[int, tuple[int, ...], int]]] = {i: [] for i in range(len(verts))}
    for a, b in E.edges:
        d, length = _primitive_direction(a, b)
        ia, ib = index[a], index[b]
        adj[ia].append((ib, d, length))
        adj[ib].append((ia, tuple(-x for x in d), length))
    # spanning tree order
    order = [0]
    parent: dict[int, tuple[int, tuple[int, ...], int]] = {}
    seen = {0}
    i = 0
    while i < len(order):
        u = order[i]
        for v, d, length in adj[u]:
            if v not in seen:
                seen.add(v)
                parent[v] = (u, d, length)
                order.append(v)
        i += 1
    zero = tuple(0 for _ in verts[0])
    results: set[tuple[tuple[int, ...], ...]] = set()

    def consistent(pos, j):
        # every edge from j to an already-placed vertex must be a short enough non-negative multiple
        for v, d, length in adj[j]:
            if v in pos:
                diff = vec_sub(pos[v], pos[j])
                m = _multiple(diff, d)
                if m is None or m < 0 or k * m > length:
                    return False
        return True

    def rec(t, pos):
        if t == len(order):
            pts = sorted(set(pos.values()))
            if len(pts) > 1:
                results.add(tuple(pts))
            return
        j = order[t]
        u, d, length = parent[j]
        for m in range(length // k + 1):
            pos[j] = vec_add(pos[u], vec_scale(m, d))
            if consistent(pos, j):
                rec(t + 1, pos)
            del pos[j]

    rec(1, {0: zero})
    out = []
    for pts in sorted(results):
        F = convex_hull(pts)
        anchor = min(F.vertices)
        out.append(F.translate(tuple(-x for x in anchor)))
    return sorted(set(out), key=lambda F: F.vertices)


def _multiple(diff, d) -> int | None:
    m = None
    for x, y in zip(diff, d):
        if y == 0:
            if x != 0:
                return None
            continue
        if x % y:
            return None
        q = x // y
        if m is None:
            m = q
        elif m != q:
            return None
    return 0 if m is None else m


def factors(P: LatticePolytope, w) -> list[LatticePolytope]:
    """All non-trivial factors of P with respect to w, up to translation."""
    w = _width_vector(w)
    hmin, _ = height_range(P, w)
    E = slice_at_height(P, w, hmin)
    out = []
    for F in summand_factors(E, -hmin):
        try:
            compute_gh(P, w, F)
        except MutationError:
            continue
        out.append(F)
    return out


def _faces(P: LatticePolytope) -> list[LatticePolytope]:
    facets = [frozenset(vs) for vs in P.facet_vertices()]
    faces = set(facets)
    frontier = set(facets)
    while frontier:
        new = set()
        for a in frontier:
            for b in facets:
                c = a & b
                if len(c) > 1 and c not in faces:
                    new.add(c)
        faces |= new
        frontier = new
    return [convex_hull(sorted(f)) for f in sorted(faces, key=sorted)]


def summand_bound(E: LatticePolytope) -> int:
    """Largest l with ``E = l A + B`` for lattice polytopes A (positive-dimensional) and B."""
    if E.dim == 0:
        return 0
    longest = max(_primitive_direction(a, b)[1] for a, b in E.edges)
    for l in range(longest, 0, -1):
        if summand_factors(E, l):
            return l
    return 0


def factor_bound(P: LatticePolytope) -> int:
    """The bound l_P: the maximum of :func:`summand_bound` over positive-dimensional faces."""
    return max([summand_bound(E) for E in _faces(P)] + [1])


def candidate_width_vectors(P: LatticePolytope, max_width: int | None = 3, exact_bound: bool = False) -> list[tuple[int, ...]]:
    """Primitive w whose minimal face on P is positive-dimensional.

    By default ``width(P, w) <= max_width``; this forces ``|<w, v>| <= max_width - 1``
    on every vertex because the origin is interior.  With ``exact_bound`` every
    w in ``l_P P^dual`` is returned instead, which contains every w admitting a
    non-trivial factor.
    """
    if exact_bound:
        bound = factor_bound(P)
        halfspaces = [(v, Fraction(-bound)) for v in P.vertices]
    else:
        if max_width is None or max_width < 2:
            return []
        c = max_width - 1
        halfspaces = [(v, Fraction(-c)) for v in P.vertices] + [(tuple(-x for x in v), Fraction(-c)) for v in P.vertices]
    R = RationalPolytope(halfspaces=halfspaces)
    A = [a for a, _ in R.halfspaces]
    b = [int(-(-lvl // 1)) for _, lvl in R.halfspaces]
    from math import ceil, floor

    lo = [floor(min(col)) for col in zip(*R.vertices)]
    hi = [ceil(max(col)) for col in zip(*R.vertices)]
    out = []
    for w in integer_points(A, b, lo, hi):
        if not any(w) or not is_primitive(w):
            continue
        hmin, hmax = height_range(P, w)
        if not exact_bound and hmax - hmin > max_width:
            continue
        if len(_vertices_at(P, w, hmin)) < 2:
            continue
        out.append(tuple(w))
    return sorted(out)


@dataclass(frozen=True)
class MutationResult:
    w: tuple[int, ...]
    F: LatticePolytope
    Q: LatticePolytope


def enumerate_mutations(
    P: LatticePolytope,
    max_width: int | None = 3,
    exact_bound: bool = False,
    dedupe: bool = True,
) -> list[MutationResult]:
    """All non-trivial mutations of P found within the width bound.

    With ``dedupe`` only one representative per GL-class of the result is kept.
    """
    results = []
    for w in candidate_width_vectors(P, max_width, exact_bound):
        for F in factors(P, w):
            results.append(MutationResult(w, F, mutate(P, w, F)))
    if not dedupe:
        return results
    kept: list[MutationResult] = []
    for r in results:
        if not any(gl_equivalent(r.Q, k.Q) is not None for k in kept):
            kept.append(r)
    return kept


# -- the dual piecewise-linear map ---------------------------------------------

def dual_map(w, F, u) -> tuple[int, ...]:
    """``u - u_min w`` with ``u_min = min <u, v_F>`` over the vertices of F."""
    if isinstance(w, MutationSpec):
        w, F, u = w.w, w.F, F
    if not isinstance(F, LatticePolytope):
        F = convex_hull(F)
    umin = min(dot(u, v) for v in F.vertices)
    return tuple(a - umin * b for a, b in zip(u, w))


@dataclass(frozen=True)
class PiecewiseLinearMap:
    """The dual map as one unimodular matrix per vertex of F.

    For the vertex ``v`` the matrix ``I - v^T w`` acts on row vectors u in the
    cone where v minimises ``<u, .>`` over F.
    """

    w: tuple[int, ...]
    vertices: tuple[tuple[int, ...], ...]
    matrices: tuple[tuple[tuple[int, ...], ...], ...]

    def cone_contains(self, i: int, u) -> bool:
        v = self.vertices[i]
        return all(dot(u, x) >= dot(u, v) for x in self.vertices)

    def matrix_for(self, u):
        for i, M in enumerate(self.matrices):
            if self.cone_contains(i, u):
                return M
        raise AssertionError("cones cover the whole space")

    def __call__(self, u) -> tuple[int, ...]:
        M = self.matrix_for(u)
        return tuple(sum(u[i] * M[i][j] for i in range(len(u))) for j in range(len(u)))


def cone_matrices(w, F) -> PiecewiseLinearMap:
    if isinstance(w, MutationSpec):
        w, F = w.w, w.F
    w = tuple(w)
    if not isinstance(F, LatticePolytope):
        F = convex_hull(F)
    n = len(w)
    mats = []
    for v in F.vertices:
        I = identity(n)
        mats.append(tuple(tuple(I[i][j] - v[i] * w[j] for j in range(n)) for i in range(n)))
    return PiecewiseLinearMap(w, F.vertices, tuple(mats))

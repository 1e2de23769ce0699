"""Exact convex hulls by the double description method.

Both directions of the vertex/facet conversion reduce to computing the extreme
rays of a pointed cone ``{x : r . x >= 0 for r in rows}`` over the integers.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce

from .linalg import inverse, rank, content, lcm


def _normalize(ray):
    g = content(ray)
    return tuple(x // g for x in ray) if g > 1 else tuple(ray)


def _initial_rows(rows):
    chosen: list[int] = []
    for i in range(len(rows)):
        if rank([rows[j] for j in chosen] + [rows[i]]) > len(chosen):
            chosen.append(i)
            if len(chosen) == len(rows[0]):
                break
    return chosen


def extreme_rays(rows: list[tuple[int, ...]]) -> list[tuple[tuple[int, ...], int]]:
    """Extreme rays of the pointed cone cut out by ``rows``.

    Returns ``(ray, tight)`` pairs, where ``tight`` is a bitmask of the row
    indices satisfied with equality.  The rows must have full column rank.
    """
    dim = len(rows[0])
    init = _initial_rows(rows)
    if len(init) < dim:
        raise ValueError("constraint system is not pointed")
    inv = inverse([rows[i] for i in init])
    rays: list[tuple[tuple[int, ...], int]] = []
    full = 0
    for i in init:
        full |= 1 << i
    for j in range(dim):
        col = [inv[i][j] for i in range(dim)]
        den = reduce(lcm, (x.denominator for x in col), 1)
        ray = _normalize(tuple(int(x * den) for x in col))
        rays.append((ray, full & ~(1 << init[j])))
    done = set(init)
    for i, row in enumerate(rows):
        if i in done:
            continue
        bit = 1 << i
        pos, zero, neg = [], [], []
        for ray, tight in rays:
            s = sum(a * b for a, b in zip(row, ray))
            if s > 0:
                pos.append((ray, tight, s))
            elif s < 0:
                neg.append((ray, tight, s))
            else:
                zero.append((ray, tight | bit))
        if not neg:
            rays = [(r, t) for r, t, _ in pos] + zero
            continue
        tights = [t for _, t in rays]
        new = []
        for rp, tp, sp in pos:
            for rn, tn, sn in neg:
                common = tp & tn
                if common.bit_count() < dim - 2:
                    continue
                if any((t & common) == common and t != tp and t != tn for t in tights):
                    continue
                ray = _normalize(tuple(sp * b - sn * a for a, b in zip(rp, rn)))
                new.append((ray, common | bit))
        rays = [(r, t) for r, t, _ in pos] + zero + new
    return rays


def facets_of_points(points: list[tuple[int, ...]]):
    """Facet inequalities ``a . x >= c`` of the hull of full-dimensional points.

    Returns ``(facets, incidence)`` with facets as ``(a, c)`` pairs of primitive
    integer normals and ``incidence[k]`` the bitmask of points on facet k.
    """
    rows = [tuple(p) + (-1,) for p in points]
    out = []
    for ray, tight in extreme_rays(rows):
        a, c = ray[:-1], ray[-1]
        if any(a):
            out.append(((a, c), tight))
    return [f for f, _ in out], [t for _, t in out]


def vertices_of_halfspaces(halfspaces):
    """Vertices of the bounded polytope ``{x : a . x >= c}`` (rational levels)."""
    rows = []
    for a, c in halfspaces:
        c = Fraction(c)
        den = reduce(lcm, [c.denominator] + [Fraction(x).denominator for x in a], 1)
        rows.append(tuple(int(Fraction(x) * den) for x in a) + (-int(c * den),))
    dim = len(rows[0]) - 1
    rows.append(tuple([0] * dim) + (1,))
    verts = []
    for ray, _ in extreme_rays(rows):
        t = ray[-1]
        if t == 0:
            raise ValueError("halfspaces do not define a bounded polytope")
        verts.append(tuple(Fraction(x, t) for x in ray[:-1]))
    return sorted(set(verts))

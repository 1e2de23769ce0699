"""Buckets of Laurent polynomials by period sequence, and mutation-graph search."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .ehrhart import DeltaVector, dual_delta_vector
from .laurent import (
    DivisibilityError,
    LaurentPolynomial,
    algebraic_mutate,
    newton_polytope,
    period_coeffs,
    substitute,
)
from .lattice import (
    LatticePolytope,
    complete_to_unimodular,
    fingerprint,
    gl_equivalences,
    height_range,
    is_canonical,
    is_fano,
    is_reflexive,
)
from .lattice.linalg import integer_inverse
from .minkowski import is_minkowski_polynomial
from .mutation import candidate_width_vectors

BUCKET_KEY_LENGTH = 8
POLYTOPE_CLASSES = ("minkowski", "reflexive", "canonical", "any")


class SearchLimitExceeded(RuntimeError):
    pass


# -- buckets ----------------------------------------------------------------

@dataclass
class PolyRecord:
    name: str
    poly: LaurentPolynomial

    @property
    def newton(self) -> LatticePolytope:
        return newton_polytope(self.poly)


@dataclass
class Bucket:
    key: tuple[int, ...]
    members: list[PolyRecord] = field(default_factory=list)

    def names(self) -> list[str]:
        return [m.name for m in self.members]


def period_key(f: LaurentPolynomial, length: int = BUCKET_KEY_LENGTH) -> tuple[int, ...]:
    return tuple(period_coeffs(f, length - 1))


def bucket(polynomials: Iterable, length: int = BUCKET_KEY_LENGTH) -> list[Bucket]:
    """Group polynomials by exact equality of their first ``length`` period coefficients.

    Items may be polynomials or ``(name, polynomial)`` pairs; buckets come out
    sorted by key, members in input order.
    """
    groups: dict[tuple, Bucket] = {}
    dim = None
    for i, item in enumerate(polynomials):
        name, f = item if isinstance(item, tuple) else (f"f{i + 1}", item)
        if dim is None:
            dim = f.nvars
        elif f.nvars != dim:
            raise ValueError("all polynomials must have the same number of variables")
        key = period_key(f, length)
        groups.setdefault(key, Bucket(key)).members.append(PolyRecord(name, f))
    return [groups[k] for k in sorted(groups)]


# -- polynomial equivalence -------------------------------------------------------

def polynomial_invariant(f: LaurentPolynomial) -> tuple:
    return (fingerprint(newton_polytope(f)), tuple(sorted(f.terms.values())))


def polynomial_gl_equivalent(f: LaurentPolynomial, g: LaurentPolynomial):
    """A unimodular M with ``substitute(f, M) == g``, or None."""
    if f.nvars != g.nvars or len(f) != len(g):
        return None
    if sorted(f.terms.values()) != sorted(g.terms.values()):
        return None
    for M in gl_equivalences(newton_polytope(f), newton_polytope(g)):
        if substitute(f, M) == g:
            return M
    return None


# -- mutation edges --------------------------------------------------------------

@dataclass(frozen=True)
class MutationEdge:
    """``target = algebraic_mutate(source, M_pre, A, M_post)``; A None marks a pure GL step."""

    source: str
    target: str
    M_pre: tuple
    A: LaurentPolynomial | None
    M_post: tuple
    width: int = 0

    def replay(self, f: LaurentPolynomial) -> LaurentPolynomial:
        if self.A is None:
            return substitute(substitute(f, self.M_pre), self.M_post)
        return algebraic_mutate(f, self.M_pre, self.A, self.M_post)


def _factor_candidates(C: LaurentPolynomial, k: int) -> list[LaurentPolynomial]:
    """Non-constant A (in n-1 variables, up to monomials and scalars) with A^k dividing C."""
    import sympy

    n = C.nvars
    syms = sympy.symbols(f"t0:{n}")
    lo = [min(e[i] for e in C.terms) for i in range(n)]
    expr = sum(
        sympy.Rational(c.numerator, c.denominator) * sympy.prod([s ** (a - l) for s, a, l in zip(syms, e, lo)])
        if not isinstance(c, int)
        else c * sympy.prod([s ** (a - l) for s, a, l in zip(syms, e, lo)])
        for e, c in C.terms.items()
    )
    _, facs = sympy.factor_list(sympy.expand(expr), *syms)
    usable = []
    for base, mult in facs:
        poly = sympy.Poly(base, *syms)
        if poly.is_monomial or poly.total_degree() == 0:
            continue
        if mult // k:
            usable.append((poly, mult // k))
    out = []
    for exps in itertools.product(*[range(e + 1) for _, e in usable]):
        if not any(exps):
            continue
        prod = sympy.Poly(1, *syms)
        for (poly, _), e in zip(usable, exps):
            prod = prod * poly**e
        terms = {}
        for mon, c in prod.terms():
            terms[tuple(mon)] = sympy.Rational(c)
        A = LaurentPolynomial(terms, n)
        out.append(A)
    return out


def algebraic_neighbours(f: LaurentPolynomial, max_width: int = 2) -> list[tuple[tuple, LaurentPolynomial, tuple, int, LaurentPolynomial]]:
    """All ``(M_pre, A, M_post, width, g)`` reachable by one algebraic mutation.

    For each width vector w the pre-map moves w to the last coordinate, the
    factor A is built from irreducible factors of the lowest slice, and the
    post-map is the inverse of the pre-map.
    """
    P = newton_polytope(f)
    if not P.is_full_dimensional:
        return []
    n = f.nvars
    out = []
    for w in candidate_width_vectors(P, max_width):
        hmin, hmax = height_range(P, w)
        M = complete_to_unimodular(w)
        Minv = integer_inverse(M)
        f1 = substitute(f, M)
        lowest = {e[:-1]: c for e, c in f1.terms.items() if e[-1] == hmin}
        C = LaurentPolynomial(lowest, n - 1)
        for A in _factor_candidates(C, -hmin):
            try:
                g = algebraic_mutate(f, M, A, Minv)
            except DivisibilityError:
                continue
            out.append((M, A, Minv, hmax - hmin, g))
    return out


def _in_class(f: LaurentPolynomial, polytope_class: str) -> bool:
    if polytope_class == "any":
        return True
    P = newton_polytope(f)
    if not P.is_full_dimensional:
        return False
    if polytope_class == "minkowski":
        return is_minkowski_polynomial(f)
    if polytope_class == "reflexive":
        return is_reflexive(P)
    if polytope_class == "canonical":
        return is_canonical(P)
    raise ValueError(f"unknown polytope class {polytope_class!r}")


def ehrhart_fingerprint(f: LaurentPolynomial) -> DeltaVector | None:
    P = newton_polytope(f)
    if not P.is_full_dimensional or not is_fano(P):
        return None
    return dual_delta_vector(P)


@dataclass
class ConnectConfig:
    max_width: int = 2
    polytope_class: str = "minkowski"
    max_depth: int = 4
    max_nodes: int = 2000

    def __post_init__(self):
        if self.polytope_class not in POLYTOPE_CLASSES:
            raise ValueError(f"polytope class must be one of {', '.join(POLYTOPE_CLASSES)}")


@dataclass
class ConnectResult:
    components: list[list[str]]
    edges: list[MutationEdge]
    truncated: bool = False
    separated_by_fingerprint: bool = False

    @property
    def connected(self) -> bool:
        return len(self.components) <= 1


class _NodeTable:
    def __init__(self):
        self.by_key: dict[tuple, list[tuple[str, LaurentPolynomial]]] = {}

    def find(self, f: LaurentPolynomial):
        for name, g in self.by_key.get(polynomial_invariant(f), []):
            M = polynomial_gl_equivalent(f, g)
            if M is not None:
                return name, M
        return None

    def add(self, name: str, f: LaurentPolynomial) -> None:
        self.by_key.setdefault(polynomial_invariant(f), []).append((name, f))


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _explore(root: PolyRecord, targets: list[PolyRecord], config: ConnectConfig):
    """BFS from ``root``; returns (reached target names, edges along the tree, truncated)."""
    n = root.poly.nvars
    table = _NodeTable()
    table.add(root.name, root.poly)
    target_table = _NodeTable()
    for t in targets:
        target_table.add(t.name, t.poly)
    parent: dict[str, MutationEdge] = {}
    found: dict[str, MutationEdge | None] = {}
    queue = deque([(root.name, root.poly, 0)])
    counter = itertools.count(1)
    truncated = False
    nodes = 1

    def record_hit(node_name, g):
        h = target_table.find(g)
        if h is not None and h[0] not in found:
            tname, M = h
            found[tname] = MutationEdge(node_name, tname, M, None, _identity(n), 0)

    record_hit(root.name, root.poly)
    while queue and len(found) < len(targets):
        name, f, depth = queue.popleft()
        if depth >= config.max_depth:
            continue
        for M_pre, A, M_post, wdt, g in algebraic_neighbours(f, config.max_width):
            if table.find(g) is not None:
                continue
            if not _in_class(g, config.polytope_class):
                continue
            nodes += 1
            if nodes > config.max_nodes:
                truncated = True
                break
            gname = f"{root.name}~{next(counter)}"
            table.add(gname, g)
            parent[gname] = MutationEdge(name, gname, M_pre, A, M_post, wdt)
            record_hit(gname, g)
            queue.append((gname, g, depth + 1))
        if truncated:
            break
    edges: list[MutationEdge] = []
    emitted = set()
    for tname in sorted(found):
        last = found[tname]
        chain = [last]
        cur = last.source
        while cur in parent:
            chain.append(parent[cur])
            cur = parent[cur].source
        for e in reversed(chain):
            key = (e.source, e.target)
            if key not in emitted:
                emitted.add(key)
                edges.append(e)
    return set(found), edges, truncated


def connect(b: Bucket | Sequence[PolyRecord], config: ConnectConfig | None = None) -> ConnectResult:
    """Connect the members of a bucket by mutations, or report the component partition.

    Members whose dual Newton polytopes have different delta-vectors are
    separated immediately: mutations preserve that fingerprint.
    """
    config = config or ConnectConfig()
    members = list(b.members if isinstance(b, Bucket) else b)
    if not members:
        return ConnectResult([], [])
    dims = {m.poly.nvars for m in members}
    if len(dims) != 1:
        raise ValueError("bucket members must share the number of variables")
    groups: dict = {}
    for m in members:
        fp = ehrhart_fingerprint(m.poly)
        groups.setdefault(None if fp is None else fp.deltas, []).append(m)
    separated = len(groups) > 1
    components: list[list[str]] = []
    edges: list[MutationEdge] = []
    truncated = False
    for fp in sorted(groups, key=lambda k: (k is None, k or ())):
        pending = list(groups[fp])
        while pending:
            root = pending.pop(0)
            reached, es, trunc = _explore(root, pending, config)
            truncated |= trunc
            comp = [root.name] + [m.name for m in pending if m.name in reached]
            pending = [m for m in pending if m.name not in reached]
            components.append(comp)
            edges.extend(es)
    return ConnectResult(components, edges, truncated, separated)


def replay_path(edges: Sequence[MutationEdge], start: LaurentPolynomial, source: str, target: str) -> LaurentPolynomial:
    """Follow edges from ``source`` to ``target`` (a path in the edge list) applying each one."""
    by_target = {e.target: e for e in edges}
    chain = []
    cur = target
    while cur != source:
        if cur not in by_target:
            raise KeyError(f"no path from {source} to {target}")
        chain.append(by_target[cur])
        cur = by_target[cur].source
    f = start
    for e in reversed(chain):
        f = e.replay(f)
    return f


def ingest_classification(path, expect: str | None = None) -> list[LatticePolytope]:
    """Read blank-line separated vertex lists; with ``expect="reflexive"`` validate each record."""
    from .textio import read_polytopes

    polys = read_polytopes(path)
    if expect is None:
        return polys
    checks = {"reflexive": is_reflexive, "canonical": is_canonical, "fano": is_fano}
    if expect not in checks:
        raise ValueError(f"unknown expectation {expect!r}")
    bad = [i + 1 for i, P in enumerate(polys) if not (P.is_full_dimensional and checks[expect](P))]
    if bad:
        raise ValueError(f"records not {expect}: {', '.join(map(str, bad))}")
    return polys

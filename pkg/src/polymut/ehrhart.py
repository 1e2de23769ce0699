"""Ehrhart counts, delta-vectors and quasi-periods of lattice and rational polytopes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .lattice import LatticePolytope, count_lattice_points, dual
from .lattice.linalg import inverse

Polytope = "LatticePolytope | RationalPolytope"


class EhrhartError(ArithmeticError):
    """Raised when the counts are inconsistent with a rational generating function."""


def denominator(Q) -> int:
    return 1 if isinstance(Q, LatticePolytope) else Q.denominator


def dimension(Q) -> int:
    return Q.dim


@lru_cache(maxsize=8192)
def _count(Q, m: int) -> int:
    return count_lattice_points(Q, m)


def ehrhart_counts(Q, m_max: int) -> list[int]:
    """``L_Q(m) = #(m Q ∩ Z^n)`` for ``m = 0..m_max``."""
    if m_max < 0:
        raise ValueError("m_max must be non-negative")
    return [_count(Q, m) for m in range(m_max + 1)]


@dataclass(frozen=True)
class DeltaVector:
    """Numerator of ``sum L(m) t^m = (sum delta_i t^i) / (1 - t^r)^(n+1)``."""

    r: int
    n: int
    deltas: tuple[int, ...]

    def __iter__(self):
        return iter(self.deltas)

    def __len__(self) -> int:
        return len(self.deltas)

    def __getitem__(self, i):
        return self.deltas[i]

    def trimmed(self) -> tuple[int, ...]:
        d = list(self.deltas)
        while len(d) > 1 and d[-1] == 0:
            d.pop()
        return tuple(d)

    def series(self, m_max: int) -> list[int]:
        """Re-expand the generating function up to ``t^m_max``."""
        out = [0] * (m_max + 1)
        k = self.n + 1
        # 1/(1-t^r)^k = sum_j C(j+k-1, k-1) t^(rj)
        for i, d in enumerate(self.deltas):
            if not d:
                continue
            j = 0
            while i + self.r * j <= m_max:
                out[i + self.r * j] += d * comb(j + k - 1, k - 1)
                j += 1
        return out


def _times_one_minus(series: list[int], r: int, times: int) -> list[int]:
    s = list(series)
    for _ in range(times):
        s = [s[i] - (s[i - r] if i >= r else 0) for i in range(len(s))]
    return s


def delta_vector(Q) -> DeltaVector:
    r, n = denominator(Q), dimension(Q)
    length = r * (n + 1)
    counts = ehrhart_counts(Q, 2 * length)
    full = _times_one_minus(counts, r, n + 1)
    if any(full[length:]):
        raise EhrhartError("lattice point counts do not fit (1 - t^r)^(n+1); counting is inconsistent")
    return DeltaVector(r, n, tuple(full[:length]))


def is_palindromic(d) -> bool:
    deltas = tuple(d.deltas if isinstance(d, DeltaVector) else d)
    return deltas == deltas[::-1]


def _fit(points: list[tuple[int, int]], degree: int) -> tuple[Fraction, ...]:
    """Coefficients (constant first) of the degree-``degree`` interpolant."""
    xs = points[: degree + 1]
    V = [[Fraction(x) ** j for j in range(degree + 1)] for x, _ in xs]
    Vi = inverse(V)
    return tuple(sum(Vi[i][j] * xs[j][1] for j in range(degree + 1)) for i in range(degree + 1))


def _evaluate(coeffs, m) -> Fraction:
    return sum(c * Fraction(m) ** j for j, c in enumerate(coeffs))


@dataclass(frozen=True)
class QuasiPolynomial:
    """Ehrhart quasi-polynomial: one rational polynomial per residue mod ``period``."""

    period: int
    constituents: tuple[tuple[Fraction, ...], ...]

    def __call__(self, m: int) -> int:
        v = _evaluate(self.constituents[m % self.period], m)
        if v.denominator != 1:
            raise EhrhartError(f"non-integral value at m={m}")
        return int(v)

    @property
    def degree(self) -> int:
        return len(self.constituents[0]) - 1


def _try_period(counts: list[int], p: int, n: int) -> tuple | None:
    constituents = []
    for res in range(p):
        pts = [(m, counts[m]) for m in range(res, len(counts), p)]
        if len(pts) < n + 1:
            return None
        coeffs = _fit(pts, n)
        if any(_evaluate(coeffs, m) != c for m, c in pts[n + 1:]):
            return None
        constituents.append(coeffs)
    return tuple(constituents)


def ehrhart_quasi_polynomial(Q) -> QuasiPolynomial:
    """The quasi-polynomial of minimal period, searched among divisors of r."""
    r, n = denominator(Q), dimension(Q)
    counts = ehrhart_counts(Q, 2 * r * (n + 1))
    for p in range(1, r + 1):
        if r % p:
            continue
        found = _try_period(counts, p, n)
        if found is not None:
            return QuasiPolynomial(p, found)
    raise EhrhartError("no quasi-polynomial with period dividing r fits the counts")


def quasi_period(Q) -> int:
    return ehrhart_quasi_polynomial(Q).period


def dual_delta_vector(P: LatticePolytope) -> DeltaVector:
    """delta-vector of the dual: the Hilbert series fingerprint of a Fano polytope."""
    return delta_vector(dual(P))


def clear_cache() -> None:
    _count.cache_clear()

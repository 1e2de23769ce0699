"""Exact integer and rational linear algebra on small dense matrices.

Vectors are tuples of Python ints, matrices are tuples of row tuples.  Row
vectors act on matrices from the left (``v @ M``), matching the monomial
substitution convention used throughout the package.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Sequence

Vector = tuple
Matrix = tuple


def content(v: Sequence[int]) -> int:
    """Non-negative gcd of the entries (0 for the zero vector)."""
    return reduce(gcd, v, 0)


def is_primitive(v: Sequence[int]) -> bool:
    return content(v) == 1


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in v)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * a for a in v)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(M: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*M))


def vec_mat(v: Sequence, M: Sequence[Sequence]) -> tuple:
    """Row vector times matrix."""
    return tuple(sum(v[i] * M[i][j] for i in range(len(v))) for j in range(len(M[0])))


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    return tuple(vec_mat(row, B) for row in A)


def as_matrix(M) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in M)


def det(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_echelon(rows)[1])


def row_echelon(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    A = [[Fraction(x) for x in row] for row in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def inverse(M: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """Rational inverse; raises ValueError when singular."""
    n = len(M)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    red, piv = row_echelon(aug)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def integer_inverse(M: Sequence[Sequence[int]]) -> Matrix:
    inv = inverse(M)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not invertible over the integers")
    return tuple(tuple(int(x) for x in row) for row in inv)


def is_unimodular(M: Sequence[Sequence[int]]) -> bool:
    return len(M) > 0 and all(len(r) == len(M) for r in M) and abs(det(M)) == 1


def check_unimodular(M) -> Matrix:
    M = as_matrix(M)
    if not is_unimodular(M):
        raise ValueError(f"matrix {M} is not unimodular")
    return M


def _column_reduce(rows: Sequence[Sequence[int]], n: int) -> tuple[list[list[int]], int]:
    """Unimodular U (list of columns) with rows @ U in column echelon form.

    Returns the columns of U and the number of pivot columns; columns from that
    index on form a basis of the integer kernel of ``rows``.
    """
    cols = [[int(i == j) for i in range(n)] for j in range(n)]
    pivot = 0
    for row in rows:
        vals = [dot(row, c) for c in cols]
        while True:
            nz = [j for j in range(pivot, n) if vals[j] != 0]
            if len(nz) <= 1:
                break
            k = min(nz, key=lambda j: (abs(vals[j]), j))
            for j in nz:
                if j != k:
                    q = vals[j] // vals[k]
                    if q:
                        cols[j] = [a - q * b for a, b in zip(cols[j], cols[k])]
                        vals[j] -= q * vals[k]
        nz = [j for j in range(pivot, n) if vals[j] != 0]
        if not nz:
            continue
        j = nz[0]
        cols[pivot], cols[j] = cols[j], cols[pivot]
        vals[pivot], vals[j] = vals[j], vals[pivot]
        if vals[pivot] < 0:
            cols[pivot] = [-a for a in cols[pivot]]
        pivot += 1
    return cols, pivot


def kernel_basis(rows: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Basis of the saturated lattice {x in Z^n : row . x = 0 for all rows}."""
    cols, piv = _column_reduce(rows, n)
    return [tuple(c) for c in cols[piv:]]


def complete_to_unimodular(w: Sequence[int]) -> Matrix:
    """A unimodular matrix whose last column is the primitive vector ``w``.

    With ``M`` the result, ``(v @ M)[-1] == <w, v>`` for every row vector v.
    """
    w = tuple(int(x) for x in w)
    if not is_primitive(w):
        raise ValueError(f"{w} is not primitive")
    n = len(w)
    cols, piv = _column_reduce([w], n)
    # w @ U = e_1, so w is the first row of U^-1
    U = transpose(cols)
    Uinv = integer_inverse(U)
    Mt = [Uinv[i] for i in range(1, n)] + [Uinv[0]]
    return transpose(Mt)


def lattice_index(vectors: Sequence[Sequence[int]], k: int) -> int:
    """gcd of the k x k minors: the index of span_Z(vectors) in its saturation.

    Returns 0 when the vectors have rank < k.
    """
    vectors = [tuple(v) for v in vectors]
    if k == 0:
        return 1
    n = len(vectors[0]) if vectors else 0
    g = 0
    for rows in combinations(vectors, k):
        for cs in combinations(range(n), k):
            g = gcd(g, det([[r[c] for c in cs] for r in rows]))
            if g == 1:
                return 1
    return g

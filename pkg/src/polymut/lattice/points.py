"""Enumeration and counting of integer points in polytopes given by inequalities.

The innermost coordinate is handled by interval arithmetic so only the other
coordinates are scanned.  Scans run vectorised in numpy whenever the values
provably fit in int64, and fall back to Python integers otherwise.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

import numpy as np

_INT64_SAFE = 2**61
_CHUNK = 1 << 20


def _ceil_div(a, b):
    return -((-a) // b)


def _axis_order(lo, hi):
    d = len(lo)
    inner = max(range(d), key=lambda i: (hi[i] - lo[i], -i))
    return inner, [i for i in range(d) if i != inner]


def _fits_int64(A, b, lo, hi) -> bool:
    m = max([abs(x) for x in lo] + [abs(x) for x in hi] + [1])
    a = max([abs(x) for row in A for x in row] + [1])
    bb = max([abs(x) for x in b] + [1])
    return a * m * (len(lo) + 1) + bb < _INT64_SAFE


def _scan_numpy(A, b, lo, hi, count_only):
    d = len(lo)
    inner, outer = _axis_order(lo, hi)
    A_np = np.array(A, dtype=np.int64).reshape(len(A), d)
    b_np = np.array(b, dtype=np.int64)
    a_in = A_np[:, inner]
    A_out = A_np[:, outer]
    ranges = [np.arange(lo[i], hi[i] + 1, dtype=np.int64) for i in outer]
    total = 0
    chunks = []
    # split the first outer axis so each chunk stays bounded in memory
    if outer:
        rest = int(np.prod([len(r) for r in ranges[1:]])) if len(ranges) > 1 else 1
        step = max(1, _CHUNK // max(rest, 1))
        first_splits = [ranges[0][i:i + step] for i in range(0, len(ranges[0]), step)]
    else:
        first_splits = [None]
    for first in first_splits:
        if outer:
            grids = np.meshgrid(first, *ranges[1:], indexing="ij")
            pre = np.stack([g.ravel() for g in grids], axis=1)
        else:
            pre = np.zeros((1, 0), dtype=np.int64)
        if pre.shape[0] == 0:
            continue
        rhs = b_np[None, :] - pre @ A_out.T
        lower = np.full(pre.shape[0], lo[inner], dtype=np.int64)
        upper = np.full(pre.shape[0], hi[inner], dtype=np.int64)
        ok = np.ones(pre.shape[0], dtype=bool)
        for j in range(len(A)):
            a = int(a_in[j])
            if a > 0:
                lower = np.maximum(lower, -((-rhs[:, j]) // a))
            elif a < 0:
                upper = np.minimum(upper, rhs[:, j] // a)
            else:
                ok &= rhs[:, j] <= 0
        span = np.where(ok, np.maximum(upper - lower + 1, 0), 0)
        if count_only:
            total += int(span.sum())
            continue
        keep = span > 0
        if not keep.any():
            continue
        pre, lower, span = pre[keep], lower[keep], span[keep]
        rep = np.repeat(np.arange(pre.shape[0]), span)
        offs = np.arange(int(span.sum())) - np.repeat(np.cumsum(span) - span, span)
        pts = np.empty((rep.shape[0], d), dtype=np.int64)
        if outer:
            pts[:, outer] = pre[rep]
        pts[:, inner] = lower[rep] + offs
        chunks.append(pts)
    if count_only:
        return total
    if not chunks:
        return []
    allpts = np.concatenate(chunks)
    return [tuple(int(x) for x in row) for row in allpts]


def _scan_python(A, b, lo, hi, count_only):
    d = len(lo)
    inner, outer = _axis_order(lo, hi)
    total = 0
    out = []
    for pre in product(*[range(lo[i], hi[i] + 1) for i in outer]):
        low, up = lo[inner], hi[inner]
        for row, c in zip(A, b):
            rhs = c - sum(row[i] * x for i, x in zip(outer, pre))
            a = row[inner]
            if a > 0:
                low = max(low, _ceil_div(rhs, a))
            elif a < 0:
                up = min(up, rhs // a)
            elif rhs > 0:
                up = low - 1
                break
        if up < low:
            continue
        if count_only:
            total += up - low + 1
            continue
        for x in range(low, up + 1):
            p = [0] * d
            for i, v in zip(outer, pre):
                p[i] = v
            p[inner] = x
            out.append(tuple(p))
    return total if count_only else out


def integer_points(A: Sequence[Sequence[int]], b: Sequence[int], lo, hi) -> list[tuple[int, ...]]:
    """All x in Z^d with lo <= x <= hi and A x >= b, sorted lexicographically."""
    lo, hi = list(lo), list(hi)
    if any(l > h for l, h in zip(lo, hi)):
        return []
    if len(lo) == 0:
        return [()] if all(c <= 0 for c in b) else []
    if _fits_int64(A, b, lo, hi):
        pts = _scan_numpy(A, b, lo, hi, False)
    else:
        pts = _scan_python(A, b, lo, hi, False)
    return sorted(pts)


def count_integer_points(A, b, lo, hi) -> int:
    lo, hi = list(lo), list(hi)
    if any(l > h for l, h in zip(lo, hi)):
        return 0
    if len(lo) == 0:
        return 1 if all(c <= 0 for c in b) else 0
    if _fits_int64(A, b, lo, hi):
        return _scan_numpy(A, b, lo, hi, True)
    return _scan_python(A, b, lo, hi, True)

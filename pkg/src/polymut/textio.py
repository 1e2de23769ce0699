"""Line-oriented text formats for polytopes, polynomials, matrices, manifests and edges.

Polytope: one vertex per line as space-separated integers.
Polynomial: one term per line ``coefficient : e1 e2 ... en``; an optional
``name <id>`` line (and ``bucket <id> <c0> ...`` in manifests) may precede
the terms.  In files holding several records, records are separated by blank
lines.  ``#`` starts a comment everywhere.
"""

from __future__ import annotations

import os
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .laurent import LaurentPolynomial
from .lattice import LatticePolytope, convex_hull


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.line = line


def _read_text(src) -> tuple[str, str | None]:
    if hasattr(src, "read"):
        return src.read(), getattr(src, "name", None)
    with open(src, encoding="utf-8") as fh:
        return fh.read(), str(src)


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        yield no, raw.split("#", 1)[0].strip()


def _records(text: str) -> list[list[tuple[int, str]]]:
    out, cur = [], []
    for no, line in _lines(text):
        if not line:
            if cur:
                out.append(cur)
                cur = []
            continue
        cur.append((no, line))
    if cur:
        out.append(cur)
    return out


def _ints(line: str, no: int, source) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in line.replace(",", " ").split())
    except ValueError:
        raise ParseError(f"expected integers, got {line!r}", no, source) from None


# -- polytopes --------------------------------------------------------------

def _polytope_from(rows: list[tuple[int, str]], source) -> LatticePolytope:
    pts = [_ints(line, no, source) for no, line in rows]
    for (no, _), p in zip(rows, pts):
        if len(p) != len(pts[0]):
            raise ParseError("vertices have different lengths", no, source)
    return convex_hull(pts)


def read_polytope(src) -> LatticePolytope:
    text, source = _read_text(src)
    rows = [(no, line) for no, line in _lines(text) if line]
    if not rows:
        raise ParseError("no vertices", None, source)
    return _polytope_from(rows, source)


def read_polytopes(src) -> list[LatticePolytope]:
    text, source = _read_text(src)
    return [_polytope_from(rec, source) for rec in _records(text)]


def format_polytope(P: LatticePolytope) -> str:
    return "".join(" ".join(str(c) for c in v) + "\n" for v in P.vertices)


def format_points(points: Iterable[Sequence]) -> str:
    return "".join(" ".join(str(c) for c in v) + "\n" for v in points)


# -- polynomials --------------------------------------------------------------

_TERM = re.compile(r"^([-+]?\d+(?:/\d+)?)\s*:\s*(.*)$")


def _poly_record(rows, source, nvars=None):
    name = None
    headers: dict[str, list[str]] = {}
    terms = {}
    for no, line in rows:
        word = line.split()[0]
        if word in ("name", "bucket"):
            headers[word] = line.split()[1:]
            if word == "name":
                if len(headers[word]) != 1:
                    raise ParseError("name takes exactly one token", no, source)
                name = headers[word][0]
            continue
        m = _TERM.match(line)
        if not m:
            raise ParseError(f"bad term {line!r}; expected 'coefficient : e1 ... en'", no, source)
        coeff = Fraction(m.group(1))
        exps = _ints(m.group(2), no, source)
        if nvars is None:
            nvars = len(exps)
        elif len(exps) != nvars:
            raise ParseError("exponent vectors have different lengths", no, source)
        terms[exps] = terms.get(exps, 0) + coeff
    if nvars is None:
        raise ParseError("polynomial record has no terms", rows[0][0] if rows else None, source)
    return name, headers, LaurentPolynomial(terms, nvars)


def read_polynomial(src) -> LaurentPolynomial:
    recs = read_named_polynomials(src)
    if len(recs) != 1:
        raise ParseError(f"expected one polynomial, found {len(recs)}")
    return recs[0][1]


def read_named_polynomials(src, default_prefix: str | None = None) -> list[tuple[str, LaurentPolynomial]]:
    text, source = _read_text(src)
    out = []
    prefix = default_prefix or (os.path.splitext(os.path.basename(source))[0] if source else "f")
    recs = _records(text)
    for i, rec in enumerate(recs):
        name, _, f = _poly_record(rec, source)
        if name is None:
            name = prefix if len(recs) == 1 else f"{prefix}.{i + 1}"
        out.append((name, f))
    return out


def format_polynomial(f: LaurentPolynomial, name: str | None = None) -> str:
    lines = [f"name {name}"] if name else []
    for e in sorted(f.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
        lines.append(f"{f.terms[e]} : " + " ".join(str(x) for x in e))
    return "\n".join(lines) + "\n"


# -- matrices -----------------------------------------------------------------

def read_matrix(src) -> tuple[tuple[int, ...], ...]:
    text, source = _read_text(src)
    rows = [_ints(line, no, source) for no, line in _lines(text) if line]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ParseError("matrix must have n rows of n integers", None, source)
    return tuple(rows)


def format_matrix_inline(M) -> str:
    return "[" + ";".join(" ".join(str(x) for x in row) for row in M) + "]"


def parse_matrix_inline(s: str) -> tuple[tuple[int, ...], ...]:
    body = s.strip()[1:-1]
    return tuple(tuple(int(x) for x in row.split()) for row in body.split(";"))


def format_poly_inline(f: LaurentPolynomial | None) -> str:
    if f is None:
        return "none"
    parts = [f"{f.terms[e]}:" + " ".join(str(x) for x in e) for e in sorted(f.terms)]
    return "[" + ";".join(parts) + "]"


def parse_poly_inline(s: str, nvars: int) -> LaurentPolynomial | None:
    if s == "none":
        return None
    terms = {}
    for part in s.strip()[1:-1].split(";"):
        c, e = part.split(":")
        terms[tuple(int(x) for x in e.split())] = Fraction(c)
    return LaurentPolynomial(terms, nvars)


# -- manifests and edges ---------------------------------------------------------

def format_manifest(buckets) -> str:
    """Bucket manifest: polynomial records with a ``bucket <id> <c0> ... <c7>`` header."""
    chunks = []
    for i, b in enumerate(buckets, 1):
        key = " ".join(str(c) for c in b.key)
        for m in b.members:
            chunks.append(f"bucket {i} {key}\n" + format_polynomial(m.poly, m.name))
    return "\n".join(chunks)


def read_manifest(src):
    """Return ``[(bucket_id, key, [(name, poly), ...]), ...]`` in file order."""
    text, source = _read_text(src)
    order: list[str] = []
    data: dict[str, tuple[tuple[int, ...], list]] = {}
    for rec in _records(text):
        name, headers, f = _poly_record(rec, source)
        if "bucket" not in headers:
            raise ParseError("manifest record without a bucket line", rec[0][0], source)
        bid, *key = headers["bucket"]
        if name is None:
            raise ParseError("manifest record without a name line", rec[0][0], source)
        if bid not in data:
            order.append(bid)
            data[bid] = (tuple(int(k) for k in key), [])
        data[bid][1].append((name, f))
    return [(bid, data[bid][0], data[bid][1]) for bid in order]


def format_edge(e) -> str:
    return (
        f"edge {e.source} {e.target} width={e.width} "
        f"pre={format_matrix_inline(e.M_pre)} A={format_poly_inline(e.A)} post={format_matrix_inline(e.M_post)}"
    )


_EDGE = re.compile(r"^edge (\S+) (\S+) width=(\d+) pre=(\[[^\]]*\]) A=(none|\[[^\]]*\]) post=(\[[^\]]*\])$")


def parse_edge(line: str):
    from .search import MutationEdge

    m = _EDGE.match(line.strip())
    if not m:
        raise ParseError(f"bad edge line {line!r}")
    pre = parse_matrix_inline(m.group(4))
    A = parse_poly_inline(m.group(5), len(pre) - 1)
    return MutationEdge(m.group(1), m.group(2), pre, A, parse_matrix_inline(m.group(6)), int(m.group(3)))


def format_mutation_record(w, F: LatticePolytope) -> str:
    ws = ",".join(str(x) for x in w)
    fs = ";".join(" ".join(str(x) for x in v) for v in F.vertices)
    return f"w=({ws}) F=[{fs}]"

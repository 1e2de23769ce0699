"""Sparse exact Laurent polynomials, monomial substitutions and algebraic mutations.

A monomial substitution by a unimodular matrix ``M`` sends ``x_i`` to
``x^(row i of M)``, so an exponent vector ``v`` becomes ``v @ M``.  The same
convention is used by :func:`polymut.lattice.apply_map`, hence
``newton_polytope(substitute(f, M)) == apply_map(newton_polytope(f), M)``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .lattice import LatticePolytope, convex_hull
from .lattice.linalg import check_unimodular, dot, is_primitive, vec_mat

Coefficient = "int | Fraction"
VARIABLE_NAMES = ("x", "y", "z", "u")


def _coeff(c):
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _coeff(Fraction(int(c.numerator), int(c.denominator)))
    try:
        return _coeff(Fraction(str(c)))
    except ValueError:
        raise TypeError(f"coefficient {c!r} is not an exact rational") from None


def _grlex(e):
    return (sum(e), e)


class DivisibilityError(ValueError):
    """An algebraic mutation needs a quotient that does not exist."""

    def __init__(self, heights: Sequence[int]):
        self.heights = tuple(heights)
        hs = ", ".join(str(h) for h in self.heights)
        super().__init__(f"slice not divisible by the required power of A at height(s) {hs}")


class LaurentPolynomial:
    """Finite map from integer exponent vectors to exact rational coefficients."""

    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms: Mapping | Iterable = (), nvars: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, ...], object] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            c = _coeff(c)
            if c:
                clean[e] = _coeff(clean.get(e, 0) + c)
                if not clean[e]:
                    del clean[e]
        dims = {len(e) for e in clean}
        if nvars is None:
            if len(dims) != 1:
                raise ValueError("cannot infer the number of variables")
            nvars = dims.pop()
        elif dims and dims != {nvars}:
            raise ValueError("exponent vectors do not match the number of variables")
        self.terms = clean
        self.nvars = nvars
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c, nvars: int) -> "LaurentPolynomial":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, e: Sequence[int], c=1) -> "LaurentPolynomial":
        return cls({tuple(e): c}, len(e))

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPolynomial":
        return cls({}, nvars)

    @classmethod
    def from_string(cls, text: str, variables: Sequence[str] | None = None) -> "LaurentPolynomial":
        """Parse an expression such as ``"x*y + 2/z"`` (uses sympy)."""
        import sympy

        if variables is None:
            names = sorted({s.name for s in sympy.sympify(text).free_symbols})
            variables = [v for v in VARIABLE_NAMES if v in names] or names
        syms = sympy.symbols(list(variables))
        expr = sympy.sympify(text, locals={str(s): s for s in syms})
        num, den = sympy.fraction(sympy.together(sympy.expand(expr)))
        den_poly = sympy.Poly(den, *syms)
        if len(den_poly.terms()) != 1:
            raise ValueError(f"{text!r} is not a Laurent polynomial")
        (dexp, dcoef), = den_poly.terms()
        terms = {}
        for e, c in sympy.Poly(sympy.expand(num), *syms).terms():
            terms[tuple(a - b for a, b in zip(e, dexp))] = Fraction(int(c.p), int(c.q)) / Fraction(int(dcoef.p), int(dcoef.q))
        return cls(terms, len(syms))

    # -- basic access -------------------------------------------------------
    def coefficient(self, e) -> object:
        return self.terms.get(tuple(e), 0)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def exponents(self) -> list[tuple[int, ...]]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials have different numbers of variables")
            return other
        return LaurentPolynomial.constant(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return LaurentPolynomial({e: c * _coeff(other) for e, c in self.terms.items()}, self.nvars)
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return power(self, k)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPolynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPolynomial.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = VARIABLE_NAMES if self.nvars <= len(VARIABLE_NAMES) else [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, key=_grlex, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}" if isinstance(c, int) else f"({c})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- structure --------------------------------------------------------------
    def map_exponents(self, fn) -> "LaurentPolynomial":
        terms = {}
        for e, c in self.terms.items():
            terms[tuple(fn(e))] = c
        nv = len(next(iter(terms))) if terms else self.nvars
        return LaurentPolynomial(terms, nv)

    def heights(self, w) -> dict[int, "LaurentPolynomial"]:
        """Split into homogeneous parts with respect to the functional ``w``."""
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(dot(w, e), {})[e] = c
        return {h: LaurentPolynomial(t, self.nvars) for h, t in sorted(parts.items())}

    def shift(self, e) -> "LaurentPolynomial":
        """Multiply by the monomial ``x^e``."""
        return LaurentPolynomial({tuple(a + b for a, b in zip(k, e)): c for k, c in self.terms.items()}, self.nvars)


def multiply(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    if f.nvars != g.nvars:
        raise ValueError("polynomials have different numbers of variables")
    out: dict = {}
    gi = list(g.terms.items())
    for e1, c1 in f.terms.items():
        for e2, c2 in gi:
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return LaurentPolynomial(out, f.nvars)


def power(f: LaurentPolynomial, k: int) -> LaurentPolynomial:
    if k < 0:
        raise ValueError("negative powers are not Laurent polynomials in general")
    result = LaurentPolynomial.constant(1, f.nvars)
    for _ in range(k):
        result = multiply(result, f)
    return result


# -- periods ----------------------------------------------------------------

def _packer(f: LaurentPolynomial, kmax: int):
    bound = max((abs(a) for e in f.terms for a in e), default=0) * max(kmax, 1) + 1
    base = 2 * bound + 1

    def pack(e):
        key = 0
        for a in reversed(e):
            key = key * base + a
        return key

    return pack


def _packed_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    qi = list(q.items())
    get = out.get
    for k1, c1 in p.items():
        for k2, c2 in qi:
            k = k1 + k2
            out[k] = get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def period_coeffs(f: LaurentPolynomial, kmax: int) -> list:
    """Constant terms ``c_k`` of ``f^k`` for ``k = 0..kmax``.

    Exponents are packed into single integers (a signed mixed-radix encoding
    that is additive), and ``c_k`` is read off as the pairing of ``f^a`` with
    ``f^(k-a)`` so only powers up to ``ceil(kmax / 2)`` are expanded.
    """
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    pack = _packer(f, kmax)
    fp = {pack(e): c for e, c in f.terms.items()}
    half = (kmax + 1) // 2
    powers = [{0: 1}]
    for _ in range(half):
        powers.append(_packed_mul(powers[-1], fp))
    out = []
    for k in range(kmax + 1):
        a = k // 2
        b = k - a
        pa, pb = powers[a], powers[b]
        if len(pa) > len(pb):
            pa, pb = pb, pa
        out.append(_coeff(sum(c * pb.get(-key, 0) for key, c in pa.items())))
    return out


# -- substitution and division ----------------------------------------------

def substitute(f: LaurentPolynomial, M) -> LaurentPolynomial:
    """Pull back along ``x -> x^M``: every exponent ``v`` becomes ``v @ M``."""
    M = check_unimodular(M)
    if len(M) != f.nvars:
        raise ValueError("matrix size does not match the number of variables")
    return LaurentPolynomial({vec_mat(e, M): c for e, c in f.terms.items()}, f.nvars)


def divide_exact(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial | None:
    """The Laurent polynomial h with ``g * h == f``, or None if there is none.

    Division by leading terms in graded lexicographic order; quotient exponents
    are confined to the box allowed by the supports, which bounds the loop.
    """
    if g.nvars != f.nvars:
        raise ValueError("polynomials have different numbers of variables")
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    n = f.nvars
    if f.is_zero():
        return LaurentPolynomial.zero(n)
    fe, ge = list(f.terms), list(g.terms)
    lo = [min(e[i] for e in fe) - min(e[i] for e in ge) for i in range(n)]
    hi = [max(e[i] for e in fe) - max(e[i] for e in ge) for i in range(n)]
    if any(l > h for l, h in zip(lo, hi)):
        return None
    lead = max(ge, key=_grlex)
    lc = g.terms[lead]
    g_items = list(g.terms.items())
    rem = dict(f.terms)
    quot: dict = {}
    while rem:
        e = max(rem, key=_grlex)
        q = tuple(a - b for a, b in zip(e, lead))
        if any(not (l <= x <= h) for x, l, h in zip(q, lo, hi)):
            return None
        c = _coeff(Fraction(rem[e]) / Fraction(lc))
        quot[q] = c
        for ge_, gc in g_items:
            k = tuple(a + b for a, b in zip(q, ge_))
            v = rem.get(k, 0) - c * gc
            if v:
                rem[k] = _coeff(v) if isinstance(v, Fraction) else v
            else:
                rem.pop(k, None)
    return LaurentPolynomial(quot, n)


# -- mutations --------------------------------------------------------------

def newton_polytope(f: LaurentPolynomial) -> LatticePolytope:
    if f.is_zero():
        raise ValueError("the zero polynomial has an empty Newton polytope")
    return convex_hull(f.terms)


def mutate_polynomial(f: LaurentPolynomial, w, A: LaurentPolynomial) -> LaurentPolynomial:
    """``sum_h A^h f_h`` where ``f_h`` is the part of f at height h for ``w``.

    This is the coordinate-free form of the pullback along ``z -> A z`` once
    ``w`` has been made the last coordinate.  ``A`` must lie at height 0.
    """
    w = tuple(int(x) for x in w)
    if not is_primitive(w):
        raise ValueError(f"width vector {w} is not primitive")
    if A.is_zero() or any(dot(w, e) != 0 for e in A.terms):
        raise ValueError("A must be a nonzero polynomial at height 0")
    parts = f.heights(w)
    out = LaurentPolynomial.zero(f.nvars)
    failed = []
    powers = {0: LaurentPolynomial.constant(1, f.nvars)}

    def apow(k):
        if k not in powers:
            powers[k] = multiply(apow(k - 1), A)
        return powers[k]

    for h, part in parts.items():
        if h >= 0:
            out = out + multiply(part, apow(h))
        else:
            q = divide_exact(part, apow(-h))
            if q is None:
                failed.append(h)
            else:
                out = out + q
    if failed:
        raise DivisibilityError(failed)
    return out


def lift_factor(A: LaurentPolynomial, nvars: int) -> LaurentPolynomial:
    """Embed a polynomial in the first n-1 variables at last exponent 0."""
    if A.nvars == nvars:
        if any(e[-1] != 0 for e in A.terms):
            raise ValueError("A must not involve the last variable")
        return A
    if A.nvars != nvars - 1:
        raise ValueError("A must be a polynomial in the first n-1 variables")
    return LaurentPolynomial({e + (0,): c for e, c in A.terms.items()}, nvars)


def algebraic_mutate(f: LaurentPolynomial, M_pre, A: LaurentPolynomial, M_post) -> LaurentPolynomial:
    """GL-equivalence, then ``x_n -> A(x_1..x_{n-1}) x_n``, then GL-equivalence.

    Raises :class:`DivisibilityError` naming every negative height whose slice
    is not divisible by the required power of A.
    """
    f1 = substitute(f, M_pre)
    last = tuple(int(i == f.nvars - 1) for i in range(f.nvars))
    g1 = mutate_polynomial(f1, last, lift_factor(A, f.nvars))
    return substitute(g1, M_post)

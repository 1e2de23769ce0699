import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from polymut.laurent import (
    DivisibilityError,
    LaurentPolynomial,
    algebraic_mutate,
    divide_exact,
    lift_factor,
    mutate_polynomial,
    newton_polytope,
    period_coeffs,
    substitute,
)
from polymut.lattice import apply_map
from polymut.lattice.linalg import integer_inverse
from polymut.textio import read_polynomial

from conftest import poly

M_EX = ((1, -1, 1), (0, 1, -1), (0, 0, 1))


def brute_period(f, kmax):
    out, acc = [], LaurentPolynomial.constant(1, f.nvars)
    for _ in range(kmax + 1):
        out.append(acc.constant_term())
        acc = acc * f
    return out


def test_from_string_and_str_round_trip():
    f = poly("x*y*z + x + y + z + 1/x + 1/(x*y*z)")
    assert len(f) == 6
    assert f.coefficient((-1, -1, -1)) == 1
    assert poly(str(f)) == f


def test_from_string_rejects_non_laurent():
    with pytest.raises(ValueError):
        poly("1/(x + y)")


def test_arithmetic_basics():
    x, y = poly("x", "xy"), poly("y", "xy")
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y
    assert (x + y) - x == y
    assert (x - x).is_zero()
    assert (2 * x).coefficient((1, 0)) == 2


def test_rational_coefficients():
    f = LaurentPolynomial({(1,): Fraction(1, 2), (-1,): Fraction(1, 2)})
    assert period_coeffs(f, 4) == [1, 0, Fraction(1, 2), 0, Fraction(3, 8)]


def test_period_of_p2_mirror():
    f = poly("x + y + 1/(x*y)", "xy")
    assert period_coeffs(f, 9) == [1, 0, 0, 6, 0, 0, 90, 0, 0, 1680]


def test_period_matches_brute_force():
    f = poly("x + y + z + 1/x + 1/y + 1/z + x*y/z")
    assert period_coeffs(f, 6) == brute_period(f, 6)


def test_period_of_period_equal_pair(data_dir):
    f1 = read_polynomial(data_dir / "pair_f1.txt")
    f2 = read_polynomial(data_dir / "pair_f2.txt")
    expected = [1, 0, 28, 216, 3516, 49680]
    assert period_coeffs(f1, 5) == expected
    assert period_coeffs(f2, 5) == expected


def test_substitute_first_example(data_dir):
    f = read_polynomial(data_dir / "first_f.txt")
    h = substitute(f, M_EX)
    assert h == poly("(y + y/x + 1/x)/z + z*(1 + x + x/y)")


def test_substitute_composes():
    f = poly("x + y + z + 1/(x*y*z)")
    A = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    B = ((1, 0, 0), (0, 1, 1), (0, 0, 1))
    AB = tuple(tuple(sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3)) for i in range(3))
    assert substitute(substitute(f, A), B) == substitute(f, AB)


def test_newton_polytope_commutes_with_substitute():
    f = poly("x*y*z + x + y + z + 1/x + 1/(x*y*z)")
    assert newton_polytope(substitute(f, M_EX)) == apply_map(newton_polytope(f), M_EX)


def test_mutate_polynomial_textbook():
    f = poly("(1 + x)^2/z^2 + 3 + x*z + y*z")
    A = poly("1 + x")
    g = mutate_polynomial(f, (0, 0, 1), A)
    assert g == poly("1/z^2 + 3 + x*(1 + x)*z + y*(1 + x)*z")


def test_mutate_polynomial_divisibility_error():
    f = poly("(1 + x)/z + y/z + 3 + z")
    with pytest.raises(DivisibilityError) as err:
        mutate_polynomial(f, (0, 0, 1), poly("1 + x"))
    assert err.value.heights == (-1,)


def test_mutate_polynomial_inverse():
    f = poly("(1 + x)^2/z^2 + 3 + x*z + y*z")
    A = poly("1 + x")
    g = mutate_polynomial(f, (0, 0, 1), A)
    assert mutate_polynomial(g, (0, 0, -1), A) == f


def test_algebraic_mutate_first_example(data_dir):
    f = read_polynomial(data_dir / "first_f.txt")
    A = lift_factor(read_polynomial(data_dir / "first_A.txt"), 3)
    Minv = integer_inverse(M_EX)
    g = algebraic_mutate(f, M_EX, A, Minv)
    assert g == poly("x*y^2*z^2 + x*y*z + 2*y*z^2 + 2*z + 1/z + 1/y + z^2/x + z/(x*y)")
    assert period_coeffs(g, 6) == period_coeffs(f, 6)


def test_lift_factor_validation():
    A = poly("1 + x", "xy")
    assert lift_factor(A, 3) == poly("1 + x")
    with pytest.raises(ValueError):
        lift_factor(poly("1 + x + y + z"), 3)


def test_divide_exact():
    g = poly("1 + x + y")
    h = poly("x/y + z - 2")
    assert divide_exact(g * h, g) == h
    assert divide_exact(g * h + 1, g) is None
    assert divide_exact(poly("0"), g).is_zero()


def test_divide_exact_shifted_monomials():
    assert divide_exact(poly("x^2/y + x/y^2"), poly("x + 1/y")) == poly("x/y")


laurent_terms = st.dictionaries(
    st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
    st.integers(-3, 3).filter(bool),
    min_size=1,
    max_size=5,
)


@settings(max_examples=60, deadline=None)
@given(laurent_terms, laurent_terms)
def test_divide_exact_inverts_multiplication(a, b):
    g = LaurentPolynomial(a, 2)
    h = LaurentPolynomial(b, 2)
    assert divide_exact(g * h, g) == h


unimodular_2 = st.sampled_from([
    ((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 1), (0, 1)), ((1, 0), (-2, 1)),
    ((2, 1), (1, 1)), ((-1, 0), (0, 1)), ((3, 2), (1, 1)),
])


@settings(max_examples=40, deadline=None)
@given(laurent_terms, unimodular_2)
def test_period_is_gl_invariant(a, M):
    f = LaurentPolynomial(a, 2)
    assert period_coeffs(substitute(f, M), 5) == period_coeffs(f, 5)


def test_period_invariant_under_random_mutations():
    rng = random.Random(5)
    for _ in range(10):
        A = LaurentPolynomial({(0, 0): 1, (rng.randint(-1, 1), rng.randint(0, 1) or 1): rng.randint(1, 2)}, 2)
        A3 = lift_factor(A, 3)
        B = LaurentPolynomial({(rng.randint(-1, 1), rng.randint(-1, 1), 0): 1 for _ in range(3)}, 3)
        f = (A3 * A3) * poly("1/z^2") + A3 * poly("1/z") * rng.randint(1, 2) + B + poly("z + x*z")
        g = mutate_polynomial(f, (0, 0, 1), A3)
        assert period_coeffs(g, 6) == period_coeffs(f, 6)
        assert mutate_polynomial(g, (0, 0, -1), A3) == f

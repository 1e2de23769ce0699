from fractions import Fraction

import pytest

from polymut.ehrhart import (
    DeltaVector,
    EhrhartError,
    delta_vector,
    dual_delta_vector,
    ehrhart_counts,
    ehrhart_quasi_polynomial,
    is_palindromic,
    quasi_period,
)
from polymut.lattice import convex_hull, count_lattice_points, dual, is_reflexive, normalized_volume

from generators import fano_sample

P2_SIMPLEX = convex_hull([(1, 0), (0, 1), (-1, -1)])
SEGMENT = convex_hull([(-1,), (1,)])
# canonical 3-simplex whose dual has denominator 2 and genuine period 2
HALF_SIMPLEX = convex_hull([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -2)])


def test_counts_of_p2_dual():
    assert ehrhart_counts(dual(P2_SIMPLEX), 3) == [1, 10, 28, 55]


def test_delta_of_p2_dual():
    d = dual_delta_vector(P2_SIMPLEX)
    assert d.r == 1 and d.trimmed() == (1, 7, 1)


def test_delta_of_segment():
    assert delta_vector(SEGMENT).trimmed() == (1, 1)


def test_delta_series_reproduces_counts():
    for P in fano_sample(21, 12):
        D = dual(P)
        d = delta_vector(D)
        m = 2 * d.r * (d.n + 1) + 3
        assert d.series(m) == ehrhart_counts(D, m)
        assert all(x >= 0 for x in d)


def test_delta_sum_is_normalized_volume_for_lattice_polytopes():
    for P in fano_sample(22, 10):
        assert sum(delta_vector(P)) == normalized_volume(P)


def test_reflexive_dual_delta_is_palindromic():
    for P in fano_sample(23, 30):
        if is_reflexive(P):
            assert is_palindromic(dual_delta_vector(P))


def test_palindrome_helper():
    assert is_palindromic((1, 7, 1))
    assert not is_palindromic((1, 7, 1, 0))
    assert is_palindromic(DeltaVector(1, 2, (1, 4, 1)))


def test_quasi_period_divides_denominator():
    D = dual(HALF_SIMPLEX)
    assert D.denominator == 2
    assert quasi_period(D) == 2
    q = ehrhart_quasi_polynomial(D)
    assert [q(m) for m in range(12)] == ehrhart_counts(D, 11)


def test_quasi_period_of_lattice_polytope():
    assert quasi_period(dual(P2_SIMPLEX)) == 1
    q = ehrhart_quasi_polynomial(dual(P2_SIMPLEX))
    assert q.constituents[0] == (1, Fraction(9, 2), Fraction(9, 2))


def test_quasi_polynomial_leading_coefficient_is_volume():
    D = dual(HALF_SIMPLEX)
    q = ehrhart_quasi_polynomial(D)
    leads = {c[-1] for c in q.constituents}
    assert len(leads) == 1


def test_counts_match_direct_enumeration():
    D = dual(HALF_SIMPLEX)
    assert ehrhart_counts(D, 6) == [count_lattice_points(D, m) for m in range(7)]


def test_counts_reject_negative():
    with pytest.raises(ValueError):
        ehrhart_counts(P2_SIMPLEX, -1)


def test_error_type_is_arithmetic():
    assert issubclass(EhrhartError, ArithmeticError)

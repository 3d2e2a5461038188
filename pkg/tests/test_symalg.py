from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spzeta.errors import (
    NonUnitConstantTerm,
    NotDivisible,
    OrderMismatch,
    UnassignedVariable,
    VariableMismatch,
    ZeroToNegativePower,
)
from spzeta.symalg import (
    LaurentPoly,
    TruncSeries,
    format_poly,
    lp_eval_numeric,
    lp_exact_div,
    lp_mul,
    parse,
    serialize,
    series_inverse,
    series_mul,
)

from .conftest import VARS2, brute_e, brute_h, laurent2, nonzero_laurent2, unit_series

A = ("a",)
a = LaurentPoly.var("a", A)
one = LaurentPoly.one(A)


def test_difference_of_squares():
    assert lp_mul(a + a ** -1, a - a ** -1) == LaurentPoly({(2,): 1, (-2,): -1}, A)


def test_mul_identity():
    p = 3 * a ** 2 - Fraction(1, 2) * a ** -1
    assert lp_mul(p, one) == p


def test_product_against_brute_expansion():
    # (1 - a y)(1 - y)(1 - a^-1 y) over vars (a, y)
    V = ("a", "y")
    y = LaurentPoly.var("y", V)
    av = LaurentPoly.var("a", V)
    prod = (1 - av * y) * (1 - y) * (1 - av ** -1 * y)
    expected = {}
    for k in range(4):
        for e, c in brute_e([(1,), (0,), (-1,)], k).items():
            if c:
                expected[(e[0], k)] = c
    assert prod.terms == dict(sorted(expected.items()))
    assert expected == {(0, 0): 1, (1, 1): -1, (0, 1): -1, (-1, 1): -1,
                        (1, 2): 1, (0, 2): 1, (-1, 2): 1, (0, 3): -1}


def test_mul_variable_mismatch():
    with pytest.raises(VariableMismatch):
        lp_mul(a, LaurentPoly.var("b", ("b",)))


def test_zero_coefficients_pruned():
    p = (a + 1) - a
    assert p.terms == {(0,): 1}
    assert LaurentPoly({(1,): 0, (0,): 2}, A).terms == {(0,): 2}


def test_exact_div_factorization():
    assert lp_exact_div(a ** 2 - a ** -2, a - a ** -1) == a + a ** -1


def test_exact_div_not_divisible():
    with pytest.raises(NotDivisible):
        lp_exact_div(a + 1, a - 1)


def test_exact_div_by_monomial_and_zero():
    assert lp_exact_div(6 * a ** 3, 2 * a ** -1) == 3 * a ** 4
    with pytest.raises(ZeroDivisionError):
        lp_exact_div(a, LaurentPoly.zero(A))


@settings(max_examples=250, deadline=None)
@given(laurent2(), laurent2(), laurent2())
def test_ring_axioms(p, q, r):
    assert lp_mul(p, q) == lp_mul(q, p)
    assert lp_mul(lp_mul(p, q), r) == lp_mul(p, lp_mul(q, r))
    assert lp_mul(p, q + r) == lp_mul(p, q) + lp_mul(p, r)
    assert p + q == q + p
    assert (p - p).is_zero()


@settings(max_examples=250, deadline=None)
@given(laurent2(), nonzero_laurent2())
def test_exact_div_roundtrip(p, d):
    assert lp_exact_div(lp_mul(p, d), d) == p


@settings(max_examples=250, deadline=None)
@given(laurent2(max_terms=8))
def test_serialization_roundtrip(p):
    text = serialize(p)
    assert parse(text) == p
    assert serialize(parse(text)) == text
    assert "\r" not in text


def test_serialization_format_is_lex_ordered():
    p = LaurentPoly({(1, 0): Fraction(-3, 2), (-1, 2): 1, (0, 0): 5}, VARS2)
    assert serialize(p) == "vars: a b\n-1 2 : 1/1\n0 0 : 5/1\n1 0 : -3/2\n"
    assert serialize(LaurentPoly.zero(VARS2)) == "vars: a b\n"


def test_format_poly():
    assert format_poly(a + 1 + a ** -1) == "a + 1 + a^-1"
    assert format_poly(LaurentPoly.zero(A)) == "0"


# --- series ---------------------------------------------------------------

def test_geometric_times_one_minus_x():
    N = 7
    geo = TruncSeries.from_coeffs([1] * (N + 1), N, A)
    prod = series_mul(geo, TruncSeries.from_coeffs([1, -1], N, A))
    assert prod == TruncSeries.one(N, A)


def test_series_times_zero():
    N = 4
    s = TruncSeries.from_coeffs([a, 1, a ** 2], N, A)
    assert series_mul(s, TruncSeries.from_coeffs([], N, A)).is_zero()


def test_series_mul_mismatch():
    with pytest.raises(OrderMismatch):
        series_mul(TruncSeries.one(3, A), TruncSeries.one(4, A))
    with pytest.raises(OrderMismatch):
        series_mul(TruncSeries.one(3, A, "x"), TruncSeries.one(3, A, "y"))


def test_newton_identity_two_vars():
    # sum h_m x^m * sum e_m (-x)^m = 1; check the x^3 coefficient by brute force
    V = ("a1", "a2")
    eigs = [(1, 0), (0, 1)]
    N = 5
    hs = [LaurentPoly(brute_h(eigs, m), V) for m in range(N + 1)]
    es = [LaurentPoly(brute_e(eigs, m), V) if m <= 2 else LaurentPoly.zero(V)
          for m in range(N + 1)]
    prod = series_mul(TruncSeries.from_coeffs(hs, N, V), TruncSeries.from_coeffs(es, N, V))
    assert prod[3].is_zero()
    assert prod == TruncSeries.one(N, V)


def test_inverse_geometric():
    V = ("c",)
    c = LaurentPoly.var("c", V)
    inv = series_inverse(TruncSeries.from_coeffs([1, -c], 3, V))
    assert inv.coeffs == (LaurentPoly.one(V), c, c ** 2, c ** 3)


def test_inverse_of_one():
    assert series_inverse(TruncSeries.one(5, A)) == TruncSeries.one(5, A)


def test_inverse_of_so3_determinant():
    det = TruncSeries.from_coeffs([1, -(a + 1 + a ** -1), a + 1 + a ** -1, -1], 4, A)
    inv = series_inverse(det)
    assert inv[2].terms == dict(brute_h([(1,), (0,), (-1,)], 2))
    assert inv[2] == a ** 2 + a + 2 + a ** -1 + a ** -2


def test_inverse_non_unit():
    with pytest.raises(NonUnitConstantTerm):
        series_inverse(TruncSeries.from_coeffs([a, 1], 2, A))
    with pytest.raises(NonUnitConstantTerm):
        series_inverse(TruncSeries.from_coeffs([0, 1], 2, A))


@settings(max_examples=200, deadline=None)
@given(unit_series())
def test_inverse_roundtrip(s):
    assert series_mul(s, series_inverse(s)) == TruncSeries.one(s.order, VARS2)


# --- numeric evaluation ---------------------------------------------------

def test_eval_trace_at_identity():
    assert lp_eval_numeric(a + 1 + a ** -1, {"a": 1}) == 3


def test_eval_at_i():
    assert abs(lp_eval_numeric(a - a ** -1, {"a": 1j}) - 2j) < 1e-15


def test_eval_errors():
    with pytest.raises(UnassignedVariable):
        lp_eval_numeric(a, {})
    with pytest.raises(ZeroToNegativePower):
        lp_eval_numeric(a ** -1, {"a": 0})
    assert lp_eval_numeric(a ** 2, {"a": 0}) == 0


@settings(max_examples=100, deadline=None)
@given(laurent2(), laurent2(), st.complex_numbers(min_magnitude=0.5, max_magnitude=2),
       st.complex_numbers(min_magnitude=0.5, max_magnitude=2))
def test_eval_is_ring_homomorphism(p, q, x, y):
    pt = {"a": x, "b": y}
    lhs = lp_eval_numeric(lp_mul(p, q), pt)
    rhs = lp_eval_numeric(p, pt) * lp_eval_numeric(q, pt)
    assert abs(lhs - rhs) <= 1e-9 * (1 + abs(rhs))

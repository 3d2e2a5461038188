import itertools
from fractions import Fraction

import pytest

from spzeta.characters import satake_vars
from spzeta.errors import ResidualExponent, UnsupportedPower, UnsupportedRank
from spzeta.symalg import LaurentPoly, TruncSeries, series_inverse, series_mul
from spzeta import zeta
from spzeta.zeta import (
    MATCHES_BOTH,
    MATCHES_CHI_SQUARED,
    SP2N_SUBSTITUTION,
    abelian_lfactor_poly,
    check_sp2n_series,
    gln_zeta_series,
    local_zeta_series,
    standard_lfactor_poly,
    verify_gln_identity,
    verify_sl2_identity,
    verify_sp2n_identity,
)

from .conftest import brute_e, brute_h, brute_one_row_so, so_eigen_exponents


def _brute_division_n1(N):
    """(1 - x^2) / ((1 - a x)(1 - x)(1 - x/a)) by long division on exponent dicts."""
    den = [dict(brute_e([(1,), (0,), (-1,)], k)) for k in range(4)]
    num = [{(0,): 1}, {}, {(0,): -1}] + [{} for _ in range(N)]
    out = []
    for k in range(N + 1):
        cur = dict(num[k])
        for j in range(1, min(k, 3) + 1):
            for e1, c1 in den[j].items():
                for e2, c2 in out[k - j].items():
                    e = (e1[0] + e2[0],)
                    cur[e] = cur.get(e, 0) - c1 * c2
        out.append({e: c for e, c in cur.items() if c})
    return out


def test_n1_first_coefficients():
    z = local_zeta_series(1, 8)
    oracle = _brute_division_n1(8)
    for m in range(9):
        assert z[m].terms == dict(sorted(oracle[m].items()))
    a = LaurentPoly.var("a1", ("a1",))
    assert z[0] == 1
    assert z[1] == a + 1 + a ** -1
    assert z[2] == a ** 2 + a + 1 + a ** -1 + a ** -2


def test_constant_coefficient_is_one():
    for n in range(1, 5):
        assert local_zeta_series(n, 2)[0] == LaurentPoly.one(satake_vars(n))


def test_n2_first_shell_is_trace():
    vn = satake_vars(2)
    a1, a2 = LaurentPoly.var("a1", vn), LaurentPoly.var("a2", vn)
    assert local_zeta_series(2, 3)[1] == a1 + a2 + 1 + a2 ** -1 + a1 ** -1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_coefficients_via_inverse_route(n):
    N = 6 if n < 3 else 5
    det = standard_lfactor_poly(n, "x").truncate(N)
    one_minus_x2 = TruncSeries.from_coeffs([1, 0, -1], N, satake_vars(n))
    independent = series_mul(one_minus_x2, series_inverse(det))
    z = local_zeta_series(n, N)
    assert z == independent
    for m in range(N + 1):
        assert z[m].terms == dict(sorted(brute_one_row_so(n, m).items()))


def test_residual_exponent_detected(monkeypatch):
    # a wrong integrand exponent must be caught, not silently absorbed
    bad = zeta.SubstitutionRecord("x", (("c", 1), ("u", 2), ("T", 2)))
    monkeypatch.setattr(zeta, "SP2N_SUBSTITUTION", bad)
    with pytest.raises(ResidualExponent):
        zeta.local_zeta_series(1, 3)


def test_rank_bounds():
    with pytest.raises(UnsupportedRank):
        local_zeta_series(7, 2)
    with pytest.raises(UnsupportedRank):
        standard_lfactor_poly(0)


def test_standard_lfactor_n1():
    p = standard_lfactor_poly(1)
    a = LaurentPoly.var("a1", ("a1",))
    t = a + 1 + a ** -1
    assert p.coeffs == (LaurentPoly.one(("a1",)), -t, t, -LaurentPoly.one(("a1",)))
    at_one = [c.substitute({"a1": 1}) for c in p.coeffs]
    assert [c.constant_term() for c in at_one] == [1, -3, 3, -1]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_standard_lfactor_structure(n):
    p = standard_lfactor_poly(n)
    assert p.order == 2 * n + 1
    assert p[2 * n + 1] == -1
    for k in range(2 * n + 2):
        assert p[k].terms == dict(sorted(
            {e: c for e, c in brute_e(so_eigen_exponents(n), k).items() if c}.items()))
        # palindromic up to sign
        assert p[k] == -p[2 * n + 1 - k]


def test_abelian_lfactor():
    c = LaurentPoly.var("c", ("c",))
    assert abelian_lfactor_poly(1).coeffs == (LaurentPoly.one(("c",)), -c)
    assert abelian_lfactor_poly(2).coeffs == (LaurentPoly.one(("c",)), -c ** 2)
    assert [x.substitute({"c": 0}) for x in abelian_lfactor_poly(2).coeffs][1].is_zero()
    with pytest.raises(UnsupportedPower):
        abelian_lfactor_poly(3)


def test_substitution_record():
    assert SP2N_SUBSTITUTION.exponents(3) == (3, 3, 6)
    assert SP2N_SUBSTITUTION.monomial(2) == LaurentPoly.monomial((2, 2, 4), zeta.BOOK_VARS)


@pytest.mark.parametrize("n, N", [(1, 8), (2, 10)])
def test_verify_sp2n_passes(n, N):
    rep = verify_sp2n_identity(n, N)
    assert rep.passed and rep.first_failure_order is None and rep.coefficient_diff is None
    assert rep.chi_power_comparison == MATCHES_CHI_SQUARED
    c, u, T = (LaurentPoly.var(v, zeta.BOOK_VARS + satake_vars(n)) for v in zeta.BOOK_VARS)
    assert rep.second_factor == 1 - c ** 2 * u ** 2 * T ** 4


def test_verify_sp2n_chi_specialization():
    assert verify_sp2n_identity(1, 4, chi=Fraction(1)).chi_power_comparison == MATCHES_BOTH
    assert verify_sp2n_identity(1, 4, chi=Fraction(0)).chi_power_comparison == MATCHES_BOTH
    assert verify_sp2n_identity(1, 4, chi=Fraction(-1)).chi_power_comparison == MATCHES_CHI_SQUARED


def test_mutation_detected():
    z = local_zeta_series(1, 8)
    rep = check_sp2n_series(1, z.with_coeff(2, z[1]))
    assert not rep.passed and rep.first_failure_order == 2
    a = LaurentPoly.var("a1", ("a1",))
    assert rep.coefficient_diff == -(a ** 2) - a ** -2


@pytest.mark.parametrize("n", [1, 2])
def test_every_single_coefficient_mutation_detected(n):
    N = 6
    z = local_zeta_series(n, N)
    bump = LaurentPoly.var("a1", satake_vars(n))
    for k in range(N + 1):
        rep = check_sp2n_series(n, z.with_coeff(k, z[k] + bump))
        assert not rep.passed and rep.first_failure_order == k


def test_weyl_invariance_of_series():
    n = 3
    z = local_zeta_series(n, 5)
    for i in range(n):
        flip = [1] * n
        flip[i] = -1
        for c in z.coeffs:
            assert c.map_exponents(lambda e: [f * x for f, x in zip(flip, e)]) == c


def test_pass_invariant_under_permutation():
    n = 2
    z = local_zeta_series(n, 6)
    for perm in itertools.permutations(range(n)):
        zp = TruncSeries(tuple(c.map_exponents(lambda e: [e[p] for p in perm]) for c in z.coeffs),
                         z.order, z.series_var)
        assert check_sp2n_series(n, zp).passed


def test_sl2_delegation():
    for N in (8, 2, 0):
        rep = verify_sl2_identity(N)
        assert rep.passed and rep.identity_name == "sl2" and rep.n == 1 and rep.order_checked == N
    assert verify_sl2_identity(8).second_factor == verify_sp2n_identity(1, 8).second_factor


@pytest.mark.parametrize("n, N", [(2, 8), (1, 8), (3, 6)])
def test_verify_gln(n, N):
    rep = verify_gln_identity(n, N)
    assert rep.passed


def test_gln_series_is_complete_homogeneous():
    z = gln_zeta_series(2, 6)
    for m in range(7):
        assert z[m].terms == dict(brute_h([(1, 0), (0, 1)], m))


def test_report_serialization_roundtrip():
    import json
    rep = check_sp2n_series(1, local_zeta_series(1, 4).with_coeff(3, LaurentPoly.zero(("a1",))))
    d = json.loads(rep.to_json())
    assert d["passed"] is False and d["first_failure_order"] == 3
    assert d["coefficient_diff"].startswith("vars: a1\n")
    assert set(d) >= {"identity_name", "n", "N", "passed", "first_failure_order",
                      "coefficient_diff", "chi_power_comparison"}

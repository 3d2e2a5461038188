"""Local unramified zeta integrals as truncated series, and their L-factor identities.

The integral over ``F^x`` of an ``O^x``-invariant integrand is a sum over
shells ``varpi^m O^x``, each of volume 1.  Every shell contributes a Laurent
polynomial in the bookkeeping variables ``c = chi(varpi)``, ``u = q^(1/2)``,
``T = q^(-s)`` and the Satake variables; dividing by the m-th power of the
series variable must leave no ``c, u, T`` exponent behind.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from .characters import CharacterCache, hom_sym, satake_vars
from .errors import ResidualExponent, UnsupportedPower, UnsupportedRank
from .rootdata import MAX_RANK, Weight
from .symalg import LaurentPoly, TruncSeries, serialize
from .whittaker import cs_whittaker_value

BOOK_VARS = ("c", "u", "T")
DEFAULT_ORDER = 10

MATCHES_CHI_SQUARED = "matches_chi_squared"
MATCHES_CHI = "matches_chi"
MATCHES_BOTH = "matches_both"
MATCHES_NEITHER = "matches_neither"


@dataclass(frozen=True)
class SubstitutionRecord:
    """What the series variable stands for, as exponents of ``c, u, T``."""

    series_var: str
    meaning: tuple[tuple[str, int], ...]

    def exponents(self, power: int = 1) -> tuple[int, ...]:
        m = dict(self.meaning)
        return tuple(power * m.get(v, 0) for v in BOOK_VARS)

    def monomial(self, power: int = 1) -> LaurentPoly:
        return LaurentPoly.monomial(self.exponents(power), BOOK_VARS)

    def describe(self) -> str:
        return f"{self.series_var} = " + "*".join(
            v if k == 1 else f"{v}^{k}" for v, k in self.meaning if k)


# x = chi(varpi) q^{-(2s - 1/2)} = c * u * T^2
SP2N_SUBSTITUTION = SubstitutionRecord("x", (("c", 1), ("u", 1), ("T", 2)))
# y = chi(varpi) q^{-s} = c * T
GLN_SUBSTITUTION = SubstitutionRecord("y", (("c", 1), ("T", 1)))
# q^{-(4s - 1)} = u^2 T^4
ABELIAN_ARG_4S_MINUS_1 = (0, 2, 4)


def _check_rank(n: int, lo: int = 1, hi: int = MAX_RANK):
    if not lo <= n <= hi:
        raise UnsupportedRank(f"rank {n} outside [{lo}, {hi}]")


def _assemble(group: str, n: int, order: int, integrand_exps, sub: SubstitutionRecord,
              cache: CharacterCache | None, first_shell: int | None = None) -> TruncSeries:
    avars = satake_vars(n)
    full = BOOK_VARS + avars
    nb = len(BOOK_VARS)
    coeffs = [LaurentPoly.zero(avars) for _ in range(order + 1)]
    # shells with m < 0 are included so that the support condition is what removes them
    for m in range(-order if first_shell is None else first_shell, order + 1):
        lam = Weight.from_true([m] + [0] * (n - 1))
        w = cs_whittaker_value(group, n, lam, cache)
        if w.is_zero:
            continue
        if m < 0:
            raise ResidualExponent(f"nonzero Whittaker value on shell m = {m}")
        term = w.as_poly().embed(full).shift(integrand_exps(m) + (0,) * n)
        term = term.shift(tuple(-e for e in sub.exponents(m)) + (0,) * n)
        for e in term.terms:
            if any(e[:nb]):
                raise ResidualExponent(
                    f"shell m = {m}: leftover exponents {dict(zip(BOOK_VARS, e[:nb]))}")
        coeffs[m] = term.drop_vars(BOOK_VARS)
    return TruncSeries(tuple(coeffs), order, sub.series_var)


def local_zeta_series(n: int, order: int, cache: CharacterCache | None = None) -> TruncSeries:
    """Sp(2n) x GL(1) unramified zeta integral as a series in x = c u T^2."""
    _check_rank(n)
    if order < 0:
        raise ValueError("order must be >= 0")
    # chi(varpi^m) |varpi^m|^(2s - n - 1/2) = c^m T^(2m) u^((2n+1)m)
    return _assemble("Sp2n", n, order, lambda m: (m, (2 * n + 1) * m, 2 * m),
                     SP2N_SUBSTITUTION, cache)


def gln_zeta_series(n: int, order: int, cache: CharacterCache | None = None) -> TruncSeries:
    """GL(n) x GL(1) Hecke integral as a series in y = c T."""
    _check_rank(n)
    if order < 0:
        raise ValueError("order must be >= 0")
    # chi(varpi^m) |varpi^m|^(s - (n-1)/2) = c^m T^m u^((n-1)m)
    # GL(1) has no non-dominant cocharacters; its support is that of 1_O (Tate)
    return _assemble("GLn", n, order, lambda m: (m, (n - 1) * m, m),
                     GLN_SUBSTITUTION, cache, 0 if n == 1 else None)


def _eigen_product(eigs, var_names, series_var: str) -> TruncSeries:
    deg = len(eigs)
    out = TruncSeries.one(deg, var_names, series_var)
    for e in eigs:
        factor = TruncSeries.from_coeffs([LaurentPoly.one(var_names), -e], deg,
                                         var_names, series_var)
        out = out * factor
    return out


def standard_lfactor_poly(n: int, series_var: str = "y") -> TruncSeries:
    """det(1 - A y) for A = diag(a_1..a_n, 1, a_n^-1..a_1^-1), degree 2n+1."""
    _check_rank(n)
    vn = satake_vars(n)
    eigs = [LaurentPoly.var(v, vn) for v in vn]
    eigs += [LaurentPoly.one(vn)] + [LaurentPoly.var(v, vn, -1) for v in reversed(vn)]
    return _eigen_product(eigs, vn, series_var)


def gl_lfactor_poly(n: int, series_var: str = "y") -> TruncSeries:
    """prod (1 - a_i y), degree n."""
    _check_rank(n)
    vn = satake_vars(n)
    return _eigen_product([LaurentPoly.var(v, vn) for v in vn], vn, series_var)


def abelian_lfactor_poly(power: int, series_var: str = "y") -> TruncSeries:
    """1 - c^power y."""
    if power not in (1, 2):
        raise UnsupportedPower(f"power {power} not in (1, 2)")
    vn = ("c",)
    return TruncSeries.from_coeffs(
        [LaurentPoly.one(vn), -LaurentPoly.var("c", vn, power)], 1, vn, series_var)


@dataclass
class VerificationReport:
    identity_name: str
    n: int
    order_checked: int
    passed: bool
    first_failure_order: int | None = None
    coefficient_diff: LaurentPoly | None = None
    chi_power_comparison: str | None = None
    second_factor: LaurentPoly | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.passed != (self.first_failure_order is None):
            raise ValueError("passed must hold exactly when no failure order is recorded")

    def to_dict(self) -> dict:
        return {
            "identity_name": self.identity_name,
            "n": self.n,
            "N": self.order_checked,
            "passed": self.passed,
            "first_failure_order": self.first_failure_order,
            "coefficient_diff": None if self.coefficient_diff is None
            else serialize(self.coefficient_diff),
            "chi_power_comparison": self.chi_power_comparison,
            "second_factor": None if self.second_factor is None
            else serialize(self.second_factor),
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _first_mismatch(got: TruncSeries, want: TruncSeries):
    for k, (g, w) in enumerate(zip(got.coeffs, want.coeffs)):
        if g != w:
            return k, g - w
    return None, None


def _to_book(series: TruncSeries, sub: SubstitutionRecord) -> LaurentPoly:
    """Sum_k coeff_k * x^k rewritten in (c, u, T, satake vars)."""
    avars = series.coeff_vars
    full = BOOK_VARS + avars
    out = LaurentPoly.zero(full)
    for k, c in enumerate(series.coeffs):
        if c:
            out = out + c.embed(full).shift(sub.exponents(k) + (0,) * len(avars))
    return out


def _abelian_in_book(power: int, avars, max_t: int) -> LaurentPoly:
    """abelian_lfactor_poly(power) at argument 4s-1, truncated to T-degree <= max_t."""
    poly = abelian_lfactor_poly(power)
    full = BOOK_VARS + tuple(avars)
    out = LaurentPoly.zero(full)
    for k, c in enumerate(poly.coeffs):
        exps = tuple(k * e for e in ABELIAN_ARG_4S_MINUS_1)
        if exps[2] > max_t:
            continue
        out = out + c.embed(full).shift(exps + (0,) * len(avars))
    return out


def _classify(second: LaurentPoly, order: int, t_per_order: int,
              chi: Fraction | None) -> str:
    max_t = t_per_order * order
    cands = {}
    for power in (2, 1):
        cand = _abelian_in_book(power, second.var_names[len(BOOK_VARS):], max_t)
        lhs = second
        if chi is not None:
            cand = cand.substitute({"c": chi})
            lhs = lhs.substitute({"c": chi})
        cands[power] = lhs == cand
    if cands[2] and cands[1]:
        return MATCHES_BOTH
    if cands[2]:
        return MATCHES_CHI_SQUARED
    if cands[1]:
        return MATCHES_CHI
    return MATCHES_NEITHER


def check_sp2n_series(n: int, zeta: TruncSeries, chi: Fraction | None = None,
                      identity_name: str = "sp2n") -> VerificationReport:
    """det(1 - A x) * zeta == 1 - x^2 coefficientwise up to the series order.

    ``chi``, when given, specializes c = chi(varpi) to a rational number for
    the chi-power comparison only; the identity itself is always symbolic.
    """
    order = zeta.order
    avars = satake_vars(n)
    det = standard_lfactor_poly(n, zeta.series_var).truncate(order)
    prod = det * zeta
    want = TruncSeries.from_coeffs([1, 0, -1], order, avars, zeta.series_var)
    k, diff = _first_mismatch(prod, want)
    second = _to_book(prod, SP2N_SUBSTITUTION)
    cmp = _classify(second, order, SP2N_SUBSTITUTION.exponents()[2], chi)
    notes = [
        f"substitution {SP2N_SUBSTITUTION.describe()}",
        "second factor 1 - x^2 = 1 - c^2 q^-(4s-1), i.e. L(4s-1, chi^2)^-1",
    ]
    if chi is not None:
        notes.append(f"chi(varpi) specialized to {chi} for the chi-power comparison")
    return VerificationReport(identity_name, n, order, k is None, k, diff, cmp, second, notes)


def verify_sp2n_identity(n: int, order: int = DEFAULT_ORDER, chi: Fraction | None = None,
                         cache: CharacterCache | None = None) -> VerificationReport:
    _check_rank(n)
    return check_sp2n_series(n, local_zeta_series(n, order, cache), chi)


def verify_sl2_identity(order: int = DEFAULT_ORDER, chi: Fraction | None = None,
                        cache: CharacterCache | None = None) -> VerificationReport:
    """Sp(2) = SL(2) case of :func:`verify_sp2n_identity`."""
    rep = verify_sp2n_identity(1, order, chi, cache)
    rep.identity_name = "sl2"
    return rep


def verify_gln_identity(n: int, order: int = DEFAULT_ORDER,
                        cache: CharacterCache | None = None) -> VerificationReport:
    """prod(1 - a_i y) * sum_m W(varpi^(m e_1)) (...)  == 1 up to the series order."""
    _check_rank(n)
    zeta = gln_zeta_series(n, order, cache)
    notes = [f"substitution {GLN_SUBSTITUTION.describe()}"]
    for m, c in enumerate(zeta.coeffs):
        if c != hom_sym(n, m):
            notes.append(f"coefficient {m} differs from h_{m}")
            return VerificationReport("gln", n, order, False, m, c - hom_sym(n, m), None, None, notes)
    prod = gl_lfactor_poly(n, zeta.series_var).truncate(order) * zeta
    want = TruncSeries.one(order, satake_vars(n), zeta.series_var)
    k, diff = _first_mismatch(prod, want)
    return VerificationReport("gln", n, order, k is None, k, diff, None,
                              _to_book(prod, GLN_SUBSTITUTION), notes)


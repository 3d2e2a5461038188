import itertools
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from spzeta.symalg import LaurentPoly, TruncSeries

VARS2 = ("a", "b")

small_coeff = st.builds(
    Fraction,
    st.integers(-5, 5),
    st.integers(1, 4),
)
small_exp = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


@st.composite
def laurent2(draw, min_terms=0, max_terms=5):
    terms = draw(st.dictionaries(small_exp, small_coeff, min_size=min_terms, max_size=max_terms))
    return LaurentPoly(terms, VARS2)


@st.composite
def nonzero_laurent2(draw, max_terms=4):
    p = draw(laurent2(min_terms=1, max_terms=max_terms))
    if p.is_zero():
        p = LaurentPoly({(0, 0): 1}, VARS2)
    return p


@st.composite
def unit_series(draw, order=6):
    c0 = draw(st.sampled_from([Fraction(1), Fraction(-1), Fraction(2), Fraction(-1, 3)]))
    rest = draw(st.lists(laurent2(max_terms=3), min_size=order, max_size=order))
    return TruncSeries.from_coeffs([LaurentPoly.const(c0, VARS2), *rest], order, VARS2)


# --- independent brute-force oracles (no LaurentPoly arithmetic) -----------

def so_eigen_exponents(n):
    """Exponent vectors of the eigenvalues a_1..a_n, 1, a_n^-1..a_1^-1."""
    out = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        out.append(tuple(e))
    out.append((0,) * n)
    for i in reversed(range(n)):
        e = [0] * n
        e[i] = -1
        out.append(tuple(e))
    return out


def brute_h(eigs, m):
    """Complete homogeneous sum over eigenvalue exponent vectors, as a Counter."""
    dim = len(eigs[0])
    c = Counter()
    for combo in itertools.combinations_with_replacement(eigs, m):
        c[tuple(sum(col) for col in zip(*combo)) if combo else (0,) * dim] += 1
    return c


def brute_e(eigs, k):
    dim = len(eigs[0])
    c = Counter()
    for combo in itertools.combinations(eigs, k):
        c[tuple(sum(col) for col in zip(*combo)) if combo else (0,) * dim] += (-1) ** k
    return c


def brute_one_row_so(n, m):
    """Character of the m-th harmonic piece: Sym^m minus Sym^(m-2) of the standard rep."""
    eigs = so_eigen_exponents(n)
    c = brute_h(eigs, m)
    if m >= 2:
        c.subtract(brute_h(eigs, m - 2))
    return {k: v for k, v in c.items() if v}


def as_terms(p: LaurentPoly) -> dict:
    return dict(p.terms)


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("SPZETA_CACHE_DIR", str(d))
    return d


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)

"""Exact Weyl characters at symbolic Satake parameters.

Characters are computed as a ratio of two alternants in half-power variables
``b_i = a_i^(1/2)`` and then rewritten in ``a_i`` once every exponent has
been checked to be even.  Freudenthal's multiplicity recursion is kept as an
independent oracle for small ranks.
"""
from __future__ import annotations

import hashlib
import itertools
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .errors import (
    NotDivisible,
    LengthMismatch,
    NegativeDegree,
    NonIntegralResult,
    NotDominant,
    OracleBudgetExceeded,
)
from .rootdata import RootDatum, Weight, build_root_datum, is_dominant, pairing2
from .symalg import LaurentPoly, parse, serialize

CACHE_SCHEMA = 1
ORACLE_MAX_RANK = 2
ORACLE_MAX_HEIGHT2 = 12


def satake_vars(n: int, prefix: str = "a") -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, n + 1))


@dataclass(frozen=True)
class CharacterKey:
    cartan_type: str
    rank: int
    highest_weight: tuple[int, ...]
    var_names: tuple[str, ...]

    def line(self) -> str:
        return "key: " + " ".join(
            [self.cartan_type, str(self.rank), *map(str, self.highest_weight)])

    def digest(self) -> str:
        text = f"schema={CACHE_SCHEMA}\n{self.line()}\nvars={' '.join(self.var_names)}\n"
        return hashlib.sha256(text.encode()).hexdigest()[:32]


def alternant(datum: RootDatum, w8: Weight) -> LaurentPoly:
    """Signed Weyl-orbit sum of ``b^(w.w8)`` (exponents are doubled coordinates)."""
    if len(w8) != datum.dim:
        raise LengthMismatch(f"weight length {len(w8)} != {datum.dim}")
    terms: dict[tuple[int, ...], int] = {}
    for w in datum.weyl_elements:
        e = w.act(w8).coords2
        terms[e] = terms.get(e, 0) + w.sign
    return LaurentPoly(terms, satake_vars(datum.dim, "b"))


def halve_exponents(p: LaurentPoly, var_names) -> LaurentPoly:
    """Rewrite a polynomial in b_i as one in a_i = b_i^2; odd exponents are a bug."""
    for e in p.terms:
        if any(x % 2 for x in e):
            raise NonIntegralResult(f"odd half-power exponent {e}")
    return p.map_exponents(lambda e: [x // 2 for x in e], var_names)


def _check_highest_weight(datum: RootDatum, lam: Weight):
    if len(lam) != datum.dim:
        raise LengthMismatch(f"weight length {len(lam)} != {datum.dim}")
    if not is_dominant(datum, lam):
        raise NotDominant(f"{lam.true_coords} is not dominant for {datum.cartan_type}{datum.rank}")
    if not lam.is_integral():
        raise NotDominant(f"{lam.true_coords} is not integral")


def denominator_factors(datum: RootDatum) -> list[LaurentPoly]:
    """Binomials ``b^(alpha/2) - b^(-alpha/2)``, one per positive root.

    Their product is ``alternant(datum, rho2)``; dividing by them one at a
    time costs O(#roots * |quotient|) instead of O(|W| * |quotient|).
    """
    names = satake_vars(datum.dim, "b")
    out = []
    for a in datum.positive_roots:
        half = tuple(c // 2 for c in a.coords2)
        out.append(LaurentPoly({half: 1, tuple(-c for c in half): -1}, names))
    return out


def divide_by_root_binomial(p: LaurentPoly, half: tuple[int, ...]) -> LaurentPoly:
    """Exact quotient of ``p`` by ``b^half - b^(-half)``.

    Writing ``p = q * (b^h - b^-h)`` gives ``q(e) = p(e + h) + q(e + 2h)``, so
    along each line ``f + Z*2h`` the quotient is a running sum of ``p`` taken
    from the top.  The division is exact iff every line sums to zero.
    """
    j = next(i for i, c in enumerate(half) if c)
    step = 2 * half[j]
    lines: dict[tuple[int, ...], list[tuple[int, tuple[int, ...], object]]] = {}
    for f, c in p.items():
        k = f[j] // step
        rep = tuple(x - 2 * k * h for x, h in zip(f, half))
        lines.setdefault(rep, []).append((k, f, c))
    out: dict[tuple[int, ...], object] = {}
    for pts in lines.values():
        pts.sort(reverse=True)
        acc = 0
        prev_k = None
        for k, f, c in pts:
            if prev_k is not None and acc:
                # fill the gap between consecutive support points
                for kk in range(prev_k - 1, k, -1):
                    e = tuple(x - h - 2 * (prev_k - kk) * h for x, h in zip(prev_f, half))
                    out[e] = acc
            acc += c
            if acc:
                out[tuple(x - h for x, h in zip(f, half))] = acc
            prev_k, prev_f = k, f
        if acc:
            raise NotDivisible(f"not divisible by root binomial {half}")
    return LaurentPoly(out, p.var_names)


@lru_cache(maxsize=512)
def _weyl_character(cartan_type: str, rank: int, coords2: tuple[int, ...]) -> LaurentPoly:
    datum = build_root_datum(cartan_type, rank)
    q = alternant(datum, Weight(coords2) + datum.rho2)
    for a in datum.positive_roots:
        q = divide_by_root_binomial(q, tuple(c // 2 for c in a.coords2))
    return halve_exponents(q, satake_vars(datum.dim))


def weyl_character(datum: RootDatum, lam: Weight, cache: "CharacterCache | None" = None) -> LaurentPoly:
    _check_highest_weight(datum, lam)
    if cache is not None:
        return cache.get_or_compute(datum, lam)
    return _weyl_character(datum.cartan_type, datum.rank, lam.coords2)


def weyl_dimension(datum: RootDatum, lam: Weight) -> int:
    _check_highest_weight(datum, lam)
    shifted = lam + datum.rho2
    d = Fraction(1)
    for a in datum.positive_roots:
        d *= Fraction(pairing2(shifted, a), pairing2(datum.rho2, a))
    assert d.denominator == 1
    return int(d)


def character_oracle(datum: RootDatum, lam: Weight) -> LaurentPoly:
    """Character via Freudenthal's multiplicity formula (small cases only)."""
    _check_highest_weight(datum, lam)
    if datum.rank > ORACLE_MAX_RANK or sum(map(abs, lam.coords2)) > ORACLE_MAX_HEIGHT2:
        raise OracleBudgetExceeded(
            f"oracle limited to rank <= {ORACLE_MAX_RANK}, doubled height <= {ORACLE_MAX_HEIGHT2}")
    rho = datum.rho2
    top = pairing2(lam + rho, lam + rho)
    simple = datum.simple_roots()
    mult: dict[Weight, int] = {lam: 1}
    level = [lam]
    while level:
        nxt = []
        seen = set()
        for mu in level:
            for a in simple:
                nu = mu - a
                if nu in seen or nu in mult:
                    continue
                seen.add(nu)
                gap = top - pairing2(nu + rho, nu + rho)
                if gap <= 0:
                    continue
                acc = 0
                for b in datum.positive_roots:
                    k = 1
                    while True:
                        up = nu + b * k
                        if pairing2(up + rho, up + rho) > top:
                            break
                        acc += mult.get(up, 0) * pairing2(up, b)
                        k += 1
                m = Fraction(2 * acc, gap)
                if m.denominator != 1:
                    raise NonIntegralResult(f"Freudenthal gave multiplicity {m} at {nu}")
                if m:
                    mult[nu] = int(m)
                    nxt.append(nu)
        level = nxt
    terms = {tuple(c // 2 for c in mu.coords2): m for mu, m in mult.items()}
    return LaurentPoly(terms, satake_vars(datum.dim))


def hom_sym(n_vars: int, m: int) -> LaurentPoly:
    """Complete homogeneous symmetric polynomial by monomial enumeration."""
    if m < 0:
        raise NegativeDegree(f"degree {m} < 0")
    terms: dict[tuple[int, ...], int] = {}
    for combo in itertools.combinations_with_replacement(range(n_vars), m):
        e = [0] * n_vars
        for i in combo:
            e[i] += 1
        terms[tuple(e)] = 1
    return LaurentPoly(terms, satake_vars(n_vars))


def default_cache_root() -> Path:
    env = os.environ.get("SPZETA_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(Path.home(), ".cache")
    return Path(base) / "spzeta"


class CharacterCache:
    """Disk cache of characters under ``<root>/chars/<type><rank>/<hash>.lp``.

    Writers go through a temporary file and ``os.replace`` so readers never
    observe a partial record.
    """

    def __init__(self, root: str | os.PathLike | None = None):
        self.root = Path(root) if root is not None else default_cache_root()
        self.hits = 0
        self.misses = 0

    def path_for(self, key: CharacterKey) -> Path:
        return self.root / "chars" / f"{key.cartan_type}{key.rank}" / f"{key.digest()}.lp"

    @staticmethod
    def key_for(datum: RootDatum, lam: Weight) -> CharacterKey:
        return CharacterKey(datum.cartan_type, datum.rank, lam.coords2, satake_vars(datum.dim))

    def load(self, key: CharacterKey) -> LaurentPoly | None:
        path = self.path_for(key)
        try:
            text = path.read_text()
        except FileNotFoundError:
            return None
        lines = text.split("\n")
        if len(lines) < 3 or lines[0] != f"schema: {CACHE_SCHEMA}" or lines[1] != key.line():
            return None
        try:
            p = parse("\n".join(lines[2:]))
        except ValueError:
            return None
        return p if p.var_names == key.var_names else None

    def store(self, key: CharacterKey, p: LaurentPoly) -> Path:
        path = self.path_for(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        body = f"schema: {CACHE_SCHEMA}\n{key.line()}\n{serialize(p)}"
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".lp")
        try:
            with os.fdopen(fd, "w", newline="\n") as fh:
                fh.write(body)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path

    def get_or_compute(self, datum: RootDatum, lam: Weight) -> LaurentPoly:
        _check_highest_weight(datum, lam)
        key = self.key_for(datum, lam)
        p = self.load(key)
        if p is not None:
            self.hits += 1
            return p
        self.misses += 1
        p = _weyl_character(datum.cartan_type, datum.rank, lam.coords2)
        self.store(key, p)
        return p

    def entries(self) -> list[Path]:
        d = self.root / "chars"
        return sorted(d.glob("*/*.lp")) if d.exists() else []

    def stats(self) -> dict:
        files = self.entries()
        by_group: dict[str, int] = {}
        for f in files:
            by_group[f.parent.name] = by_group.get(f.parent.name, 0) + 1
        return {
            "root": str(self.root),
            "schema": CACHE_SCHEMA,
            "entries": len(files),
            "bytes": sum(f.stat().st_size for f in files),
            "by_group": dict(sorted(by_group.items())),
        }

    def clear(self) -> int:
        files = self.entries()
        for f in files:
            f.unlink()
        return len(files)

"""Exact Laurent polynomials and truncated power series over the rationals.

A :class:`LaurentPoly` is an immutable map from integer exponent vectors to
nonzero rational coefficients.  Integral coefficients are kept as ``int``
and promoted to :class:`fractions.Fraction` only when needed.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    NonUnitConstantTerm,
    NotDivisible,
    OrderMismatch,
    UnassignedVariable,
    VariableMismatch,
    ZeroToNegativePower,
)

Exponent = tuple[int, ...]


def _norm(c):
    """Collapse integral Fractions to int."""
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return _norm(Fraction(a) / b)


class LaurentPoly:
    """Multivariate Laurent polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_vars", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None,
                 var_names: Sequence[str] = ()):
        self._vars = tuple(var_names)
        nv = len(self._vars)
        clean: dict[Exponent, object] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nv:
                raise VariableMismatch(
                    f"exponent {e} has length {len(e)}, expected {nv}")
            c = _norm(c)
            if c:
                clean[e] = _norm(clean.get(e, 0) + c) if e in clean else c
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, var_names: tuple) -> "LaurentPoly":
        # trusted constructor: terms already normalized and pruned
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._vars = var_names
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, var_names: Sequence[str] = ()) -> "LaurentPoly":
        return cls._raw({}, tuple(var_names))

    @classmethod
    def const(cls, c, var_names: Sequence[str] = ()) -> "LaurentPoly":
        v = tuple(var_names)
        return cls({(0,) * len(v): c}, v)

    @classmethod
    def one(cls, var_names: Sequence[str] = ()) -> "LaurentPoly":
        return cls.const(1, var_names)

    @classmethod
    def monomial(cls, exps: Sequence[int], var_names: Sequence[str],
                 coeff=1) -> "LaurentPoly":
        return cls({tuple(exps): coeff}, var_names)

    @classmethod
    def var(cls, name: str, var_names: Sequence[str], power: int = 1) -> "LaurentPoly":
        v = tuple(var_names)
        e = [0] * len(v)
        e[v.index(name)] = power
        return cls({tuple(e): 1}, v)

    @property
    def var_names(self) -> tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> dict[Exponent, object]:
        """Terms in canonical (lexicographic exponent) order."""
        return {e: self._terms[e] for e in sorted(self._terms)}

    def items(self):
        for e in sorted(self._terms):
            yield e, self._terms[e]

    def coeff(self, exps: Sequence[int]):
        return self._terms.get(tuple(exps), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        z = (0,) * len(self._vars)
        return all(e == z for e in self._terms)

    def constant_term(self):
        return self._terms.get((0,) * len(self._vars), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._vars == other._vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.const(other, self._vars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._vars, frozenset(self._terms.items())))
        return self._hash

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other._vars != self._vars:
                raise VariableMismatch(f"{self._vars} vs {other._vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other, self._vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = _norm(out.get(e, 0) + c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, self._vars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, self._vars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return lp_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise NotDivisible("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            return LaurentPoly._raw(
                {tuple(x * k for x in e): _div(1, c) ** -k}, self._vars)
        out = LaurentPoly.one(self._vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "LaurentPoly":
        c = _norm(c)
        if not c:
            return LaurentPoly.zero(self._vars)
        return LaurentPoly._raw(
            {e: _norm(v * c) for e, v in self._terms.items()}, self._vars)

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with exponent vector ``exps``."""
        exps = tuple(exps)
        return LaurentPoly._raw(
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self._terms.items()},
            self._vars)

    def map_exponents(self, fn: Callable[[Exponent], Sequence[int]],
                      var_names: Sequence[str] | None = None) -> "LaurentPoly":
        """Apply ``fn`` to every exponent vector, collecting like terms."""
        vn = self._vars if var_names is None else tuple(var_names)
        out: dict[Exponent, object] = {}
        for e, c in self._terms.items():
            e2 = tuple(fn(e))
            out[e2] = out.get(e2, 0) + c
        return LaurentPoly({e: c for e, c in out.items()}, vn)

    def embed(self, var_names: Sequence[str]) -> "LaurentPoly":
        """Re-express over a superset of variables (missing ones get exponent 0)."""
        vn = tuple(var_names)
        missing = [v for v in self._vars if v not in vn]
        if missing:
            raise VariableMismatch(f"variables {missing} absent from {vn}")
        idx = [self._vars.index(v) if v in self._vars else None for v in vn]
        return LaurentPoly._raw(
            {tuple(e[i] if i is not None else 0 for i in idx): c
             for e, c in self._terms.items()}, vn)

    def drop_vars(self, names: Iterable[str]) -> "LaurentPoly":
        """Remove variables that appear only with exponent zero."""
        names = set(names)
        keep = [i for i, v in enumerate(self._vars) if v not in names]
        gone = [i for i, v in enumerate(self._vars) if v in names]
        for e in self._terms:
            if any(e[i] for i in gone):
                raise VariableMismatch(
                    f"cannot drop {sorted(names)}: exponent {e} uses them")
        return LaurentPoly._raw(
            {tuple(e[i] for i in keep): c for e, c in self._terms.items()},
            tuple(self._vars[i] for i in keep))

    def degree_bounds(self) -> list[tuple[int, int]]:
        """Per-variable (min, max) exponent; empty list for the zero polynomial."""
        if not self._terms:
            return []
        es = list(self._terms)
        return [(min(e[i] for e in es), max(e[i] for e in es))
                for i in range(len(self._vars))]

    def substitute(self, assignment: Mapping[str, object]) -> "LaurentPoly":
        """Substitute rational values for some variables, keeping the rest."""
        idx = [i for i, v in enumerate(self._vars) if v in assignment]
        keep = [i for i, v in enumerate(self._vars) if v not in assignment]
        out: dict[Exponent, object] = {}
        for e, c in self._terms.items():
            for i in idx:
                val = Fraction(assignment[self._vars[i]])
                if e[i] < 0 and val == 0:
                    raise ZeroToNegativePower(self._vars[i])
                c = c * val ** e[i]
            k = tuple(e[i] for i in keep)
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out, tuple(self._vars[i] for i in keep))

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r}, vars={self._vars})"

    def __str__(self):
        return format_poly(self)


def lp_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    if p.var_names != q.var_names:
        raise VariableMismatch(f"{p.var_names} vs {q.var_names}")
    out: dict[Exponent, object] = {}
    qt = list(q._terms.items())
    for e1, c1 in p._terms.items():
        for e2, c2 in qt:
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return LaurentPoly._raw(
        {e: n for e, c in out.items() if (n := _norm(c))}, p.var_names)


def lp_exact_div(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Return ``r`` with ``r * d == p``, or raise :class:`NotDivisible`.

    Lex-leading-term division.  In a Laurent ring the degree range of a
    product in each variable is the sum of the factors' ranges, so every
    quotient exponent must sit inside a fixed box; leaving it proves there
    is no exact quotient and also bounds the loop.
    """
    if p.var_names != d.var_names:
        raise VariableMismatch(f"{p.var_names} vs {d.var_names}")
    if d.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if p.is_zero():
        return LaurentPoly.zero(p.var_names)
    pb, db = p.degree_bounds(), d.degree_bounds()
    lo = [a[0] - b[0] for a, b in zip(pb, db)]
    hi = [a[1] - b[1] for a, b in zip(pb, db)]
    if any(l > h for l, h in zip(lo, hi)):
        raise NotDivisible("degree ranges incompatible")

    d_terms = list(d._terms.items())
    d_lead = max(d._terms)
    d_lc = d._terms[d_lead]
    rem = dict(p._terms)
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    quot: dict[Exponent, object] = {}
    while rem:
        while True:
            e = tuple(-x for x in heapq.heappop(heap))
            if e in rem:
                break
        c = _div(rem[e], d_lc)
        qe = tuple(a - b for a, b in zip(e, d_lead))
        if any(x < l or x > h for x, l, h in zip(qe, lo, hi)):
            raise NotDivisible(f"quotient exponent {qe} outside {list(zip(lo, hi))}")
        quot[qe] = c
        for de, dc in d_terms:
            te = tuple(a + b for a, b in zip(qe, de))
            old = rem.get(te)
            if old is None:
                rem[te] = _norm(-c * dc)
                heapq.heappush(heap, tuple(-x for x in te))
            else:
                v = _norm(old - c * dc)
                if v:
                    rem[te] = v
                else:
                    del rem[te]
    return LaurentPoly._raw(quot, p.var_names)


def lp_eval_numeric(p: LaurentPoly, assignment: Mapping[str, complex]) -> complex:
    """Evaluate in floating point by direct summation."""
    vals = []
    for v in p.var_names:
        if v not in assignment:
            raise UnassignedVariable(v)
        vals.append(complex(assignment[v]))
    total = 0j
    for e, c in p._terms.items():
        t = complex(float(c))
        for i, k in enumerate(e):
            if k:
                if vals[i] == 0 and k < 0:
                    raise ZeroToNegativePower(p.var_names[i])
                t *= vals[i] ** k
        total += t
    return total


# --- serialization --------------------------------------------------------

def serialize(p: LaurentPoly) -> str:
    lines = ["vars:" + "".join(" " + v for v in p.var_names)]
    for e, c in p.items():
        f = Fraction(c)
        lines.append(" ".join([*map(str, e), ":", f"{f.numerator}/{f.denominator}"]))
    return "\n".join(lines) + "\n"


def parse(text: str) -> LaurentPoly:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines or not lines[0].startswith("vars:"):
        raise ValueError("missing 'vars:' header")
    names = tuple(lines[0][len("vars:"):].split())
    terms = {}
    for ln in lines[1:]:
        left, _, right = ln.partition(":")
        if not _:
            raise ValueError(f"malformed term line {ln!r}")
        e = tuple(int(x) for x in left.split())
        if e in terms:
            raise ValueError(f"duplicate exponent {e}")
        terms[e] = Fraction(right.strip())
    return LaurentPoly(terms, names)


_SUPER = str.maketrans("-0123456789", "⁻⁰¹²³⁴⁵⁶⁷⁸⁹")


def format_poly(p: LaurentPoly, unicode: bool = False) -> str:
    """Human-readable form, highest lex exponent first."""
    if p.is_zero():
        return "0"

    def mono(e):
        parts = []
        for v, k in zip(p.var_names, e):
            if k == 0:
                continue
            if k == 1:
                parts.append(v)
            elif unicode:
                parts.append(v + str(k).translate(_SUPER))
            else:
                parts.append(f"{v}^{k}")
        return "*".join(parts)

    out = []
    for e, c in sorted(p._terms.items(), reverse=True):
        m = mono(e)
        neg = c < 0
        a = -c if neg else c
        if m and a == 1:
            body = m
        elif m:
            body = f"{a}*{m}"
        else:
            body = str(a)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


# --- truncated series ------------------------------------------------------

@dataclass(frozen=True)
class TruncSeries:
    """Power series in ``series_var`` with LaurentPoly coefficients, mod x^(order+1)."""

    coeffs: tuple[LaurentPoly, ...]
    order: int
    series_var: str = "x"

    def __post_init__(self):
        if self.order < 0:
            raise OrderMismatch("order must be non-negative")
        if len(self.coeffs) != self.order + 1:
            raise OrderMismatch(
                f"{len(self.coeffs)} coefficients for order {self.order}")
        vs = {c.var_names for c in self.coeffs}
        if len(vs) > 1:
            raise VariableMismatch(f"mixed coefficient variables {vs}")

    @property
    def coeff_vars(self) -> tuple[str, ...]:
        return self.coeffs[0].var_names

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, order: int, var_names: Sequence[str] = (),
                    series_var: str = "x") -> "TruncSeries":
        """Build from a (possibly short or long) coefficient list, padding or truncating."""
        vn = tuple(var_names)
        cs = []
        for c in list(coeffs)[: order + 1]:
            cs.append(c if isinstance(c, LaurentPoly) else LaurentPoly.const(c, vn))
        if cs:
            vn = cs[0].var_names
        cs += [LaurentPoly.zero(vn)] * (order + 1 - len(cs))
        return cls(tuple(cs), order, series_var)

    @classmethod
    def one(cls, order: int, var_names: Sequence[str] = (), series_var: str = "x"):
        return cls.from_coeffs([1], order, var_names, series_var)

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries.from_coeffs(self.coeffs, order, self.coeff_vars, self.series_var)

    def embed(self, var_names: Sequence[str]) -> "TruncSeries":
        return TruncSeries(tuple(c.embed(var_names) for c in self.coeffs),
                           self.order, self.series_var)

    def _check(self, other: "TruncSeries"):
        if self.order != other.order or self.series_var != other.series_var:
            raise OrderMismatch(
                f"({self.series_var}, N={self.order}) vs ({other.series_var}, N={other.order})")
        if self.coeff_vars != other.coeff_vars:
            raise VariableMismatch(f"{self.coeff_vars} vs {other.coeff_vars}")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
                           self.order, self.series_var)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)),
                           self.order, self.series_var)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        return series_mul(self, other)

    def __getitem__(self, k: int) -> LaurentPoly:
        return self.coeffs[k]

    def with_coeff(self, k: int, value: LaurentPoly) -> "TruncSeries":
        cs = list(self.coeffs)
        cs[k] = value
        return TruncSeries(tuple(cs), self.order, self.series_var)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)


def series_mul(s1: TruncSeries, s2: TruncSeries) -> TruncSeries:
    s1._check(s2)
    n = s1.order
    zero = LaurentPoly.zero(s1.coeff_vars)
    out = []
    for k in range(n + 1):
        acc = zero
        for i in range(k + 1):
            a, b = s1.coeffs[i], s2.coeffs[k - i]
            if a and b:
                acc = acc + lp_mul(a, b)
        out.append(acc)
    return TruncSeries(tuple(out), n, s1.series_var)


def series_inverse(s: TruncSeries) -> TruncSeries:
    c0 = s.coeffs[0]
    if not c0.is_constant() or c0.is_zero():
        raise NonUnitConstantTerm(f"constant coefficient {c0} is not a unit")
    inv0 = _div(1, c0.constant_term())
    vn = s.coeff_vars
    out = [LaurentPoly.const(inv0, vn)]
    for k in range(1, s.order + 1):
        acc = LaurentPoly.zero(vn)
        for i in range(1, k + 1):
            if s.coeffs[i]:
                acc = acc + lp_mul(s.coeffs[i], out[k - i])
        out.append(acc.scale(-inv0))
    return TruncSeries(tuple(out), s.order, s.series_var)

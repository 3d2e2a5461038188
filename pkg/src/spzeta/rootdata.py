"""Root data for types A, B, C with fully enumerated Weyl groups.

All weights use doubled epsilon-coordinates so that the half-integral Weyl
vector of type B is an integer vector.  Type ``A`` of rank ``r`` lives in
``r + 1`` coordinates (the GL(r+1) realization); rank 0 is allowed there so
that GL(1) has a datum.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import InputError, LengthMismatch, UnsupportedRank

MAX_RANK = 6


@dataclass(frozen=True)
class Weight:
    coords2: tuple[int, ...]

    @classmethod
    def from_true(cls, coords: Sequence) -> "Weight":
        out = []
        for c in coords:
            d = 2 * c
            if d != int(d):
                raise InputError(f"coordinate {c} is not a half-integer")
            out.append(int(d))
        return cls(tuple(out))

    @property
    def true_coords(self) -> tuple:
        from fractions import Fraction
        return tuple(Fraction(c, 2) if c % 2 else c // 2 for c in self.coords2)

    def is_integral(self) -> bool:
        return all(c % 2 == 0 for c in self.coords2)

    def __len__(self):
        return len(self.coords2)

    def __add__(self, other: "Weight") -> "Weight":
        _check_len(self, other)
        return Weight(tuple(a + b for a, b in zip(self.coords2, other.coords2)))

    def __sub__(self, other: "Weight") -> "Weight":
        _check_len(self, other)
        return Weight(tuple(a - b for a, b in zip(self.coords2, other.coords2)))

    def __mul__(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coords2))

    __rmul__ = __mul__


def _check_len(u: Weight, v: Weight):
    if len(u.coords2) != len(v.coords2):
        raise LengthMismatch(f"weights of length {len(u.coords2)} and {len(v.coords2)}")


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation: (w.v)[perm[i]] = signs[i] * v[i]."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]
    sign: int

    def act(self, w8: Weight) -> Weight:
        out = [0] * len(self.perm)
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            out[j] = s * w8.coords2[i]
        return Weight(tuple(out))

    def compose(self, other: "WeylElement") -> "WeylElement":
        """self after other."""
        n = len(self.perm)
        perm = tuple(self.perm[other.perm[i]] for i in range(n))
        signs = tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(n))
        return WeylElement(perm, signs, self.sign * other.sign)


@dataclass(frozen=True)
class RootDatum:
    cartan_type: str
    rank: int
    positive_roots: tuple[Weight, ...]
    rho2: Weight
    weyl_elements: tuple[WeylElement, ...]

    @property
    def dim(self) -> int:
        """Number of epsilon-coordinates."""
        return len(self.rho2)

    def simple_roots(self) -> list[Weight]:
        n = self.dim
        e = _unit2(n)
        if self.cartan_type == "A":
            return [e[i] - e[i + 1] for i in range(n - 1)]
        tail = e[n - 1] * (1 if self.cartan_type == "B" else 2)
        return [e[i] - e[i + 1] for i in range(n - 1)] + [tail]

    def simple_reflections(self) -> list[WeylElement]:
        n = self.dim
        gens = []
        for i in range(n - 1):
            perm = list(range(n))
            perm[i], perm[i + 1] = i + 1, i
            gens.append(WeylElement(tuple(perm), (1,) * n, -1))
        if self.cartan_type in "BC":
            signs = [1] * n
            signs[n - 1] = -1
            gens.append(WeylElement(tuple(range(n)), tuple(signs), -1))
        return gens


def _unit2(n: int) -> list[Weight]:
    # doubled coordinates of the standard basis vectors
    return [Weight(tuple(2 if j == i else 0 for j in range(n))) for i in range(n)]


def _perm_sign(p: Sequence[int]) -> int:
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


@lru_cache(maxsize=None)
def build_root_datum(cartan_type: str, rank: int) -> RootDatum:
    if cartan_type not in ("A", "B", "C"):
        raise InputError(f"unsupported Cartan type {cartan_type!r}")
    if rank > MAX_RANK:
        raise UnsupportedRank(f"rank {rank} exceeds {MAX_RANK}")
    if rank < (0 if cartan_type == "A" else 1):
        raise UnsupportedRank(f"rank {rank} too small for type {cartan_type}")

    n = rank + 1 if cartan_type == "A" else rank
    e = _unit2(n)
    roots = []
    for i, j in itertools.combinations(range(n), 2):
        roots.append(e[i] - e[j])
        if cartan_type != "A":
            roots.append(e[i] + e[j])
    if cartan_type == "B":
        roots += e
    elif cartan_type == "C":
        roots += [x * 2 for x in e]

    # sum of positive roots in true coordinates = 2*rho, i.e. rho in doubled units
    rho2 = Weight(tuple(sum(r.coords2[i] for r in roots) // 2 for i in range(n)))

    elems = []
    for p in itertools.permutations(range(n)):
        ps = _perm_sign(p)
        if cartan_type == "A":
            elems.append(WeylElement(p, (1,) * n, ps))
            continue
        for signs in itertools.product((1, -1), repeat=n):
            neg = sum(1 for s in signs if s < 0)
            elems.append(WeylElement(p, signs, ps * (-1) ** neg))
    return RootDatum(cartan_type, rank, tuple(roots), rho2, tuple(elems))


def weyl_orbit_terms(datum: RootDatum, w8: Weight) -> list[tuple[int, Weight]]:
    if len(w8) != datum.dim:
        raise LengthMismatch(f"weight length {len(w8)} != {datum.dim}")
    return [(w.sign, w.act(w8)) for w in datum.weyl_elements]


def is_dominant(datum: RootDatum, w8: Weight) -> bool:
    if len(w8) != datum.dim:
        raise LengthMismatch(f"weight length {len(w8)} != {datum.dim}")
    c = w8.coords2
    if any(c[i] < c[i + 1] for i in range(len(c) - 1)):
        return False
    if datum.cartan_type in "BC" and c and c[-1] < 0:
        return False
    return True


def pairing2(w8: Weight, v8: Weight) -> int:
    """Standard form on doubled coordinates (4x the true pairing)."""
    _check_len(w8, v8)
    return sum(a * b for a, b in zip(w8.coords2, v8.coords2))


def inversion_count(datum: RootDatum, w: WeylElement) -> int:
    """Length of ``w``: positive roots sent to negative roots."""
    pos = set(datum.positive_roots)
    return sum(1 for r in datum.positive_roots if w.act(r) not in pos)

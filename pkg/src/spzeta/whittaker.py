"""Spherical Whittaker values on torus cocharacters (Casselman-Shalika).

For a dominant cocharacter ``lam`` of the group, the normalized unramified
Whittaker function takes the value ``q^(-<rho, lam>) * chi_lam(A)`` where
``chi_lam`` is the dual-group character at the Satake class ``A``; it
vanishes on non-dominant cocharacters.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import CharacterCache, satake_vars, weyl_character
from .errors import InputError, LengthMismatch, UnsupportedRank
from .rootdata import MAX_RANK, RootDatum, Weight, build_root_datum, is_dominant, pairing2
from .symalg import LaurentPoly

GROUPS = ("Sp2n", "GLn")


@dataclass(frozen=True)
class WhittakerValue:
    """``u^q_exponent2 * char_part`` with ``u = q^(1/2)``."""

    q_exponent2: int
    char_part: LaurentPoly
    is_zero: bool = False

    def __post_init__(self):
        if self.is_zero and (self.q_exponent2 != 0 or not self.char_part.is_zero()):
            raise ValueError("zero Whittaker value must have empty data")

    @classmethod
    def zero(cls, var_names) -> "WhittakerValue":
        return cls(0, LaurentPoly.zero(var_names), True)

    def as_poly(self, u: str = "u") -> LaurentPoly:
        """Combined Laurent polynomial in ``(u, a_1, ..., a_n)``."""
        vn = (u, *self.char_part.var_names)
        return self.char_part.embed(vn).shift((self.q_exponent2,) + (0,) * len(self.char_part.var_names))


def group_datum(group: str, n: int) -> RootDatum:
    """Root datum of the group itself: C_n for Sp(2n), A_(n-1) for GL(n)."""
    if group == "Sp2n":
        return build_root_datum("C", n)
    if group == "GLn":
        return build_root_datum("A", n - 1)
    raise InputError(f"unknown group {group!r}; expected one of {GROUPS}")


def dual_datum(group: str, n: int) -> RootDatum:
    """Dual-group datum: B_n (SO(2n+1)) for Sp(2n), A_(n-1) for GL(n)."""
    if group == "Sp2n":
        return build_root_datum("B", n)
    if group == "GLn":
        return build_root_datum("A", n - 1)
    raise InputError(f"unknown group {group!r}; expected one of {GROUPS}")


def modulus_half_exponent(group_datum: RootDatum, coweight: Weight) -> Fraction:
    """``<rho, lam>`` for the group's rho; delta_B^(1/2)(varpi^lam) = q^-(this)."""
    if len(coweight) != group_datum.dim:
        raise LengthMismatch(f"coweight length {len(coweight)} != {group_datum.dim}")
    return Fraction(pairing2(group_datum.rho2, coweight), 4)


def cs_whittaker_value(group: str, n: int, lam: Weight,
                       cache: CharacterCache | None = None) -> WhittakerValue:
    if n < 1 or n > MAX_RANK + (1 if group == "GLn" else 0):
        raise UnsupportedRank(f"n = {n} out of range for {group}")
    gd = group_datum(group, n)
    dd = dual_datum(group, n)
    if len(lam) != gd.dim:
        raise LengthMismatch(f"cocharacter length {len(lam)} != {gd.dim}")
    if not lam.is_integral():
        raise InputError(f"cocharacter {lam.true_coords} is not integral")
    if not is_dominant(gd, lam):
        return WhittakerValue.zero(satake_vars(dd.dim))
    half = modulus_half_exponent(gd, lam)
    q2 = -2 * half
    if q2.denominator != 1:
        raise InputError(f"modulus exponent {half} is not a half-integer")
    return WhittakerValue(int(q2), weyl_character(dd, lam, cache))

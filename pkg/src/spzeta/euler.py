"""Numeric Euler products over synthetic unramified data.

Everything here is floating point.  Characters come from the exact symbolic
path and are only evaluated numerically at the end.
"""
from __future__ import annotations

import cmath
import json
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Sequence

from .characters import CharacterCache, satake_vars, weyl_character
from .errors import DivergenceGuard, InputError, PoleProximity
from .rootdata import Weight, build_root_datum
from .symalg import lp_eval_numeric

GUARD_RATIO = 0.9
TERM_CAP = 10_000
POLE_EPS = 1e-12
KINDS = ("standard_twisted", "abelian_chi", "abelian_chi2")

EXAMPLE_PATH = Path(__file__).parent / "data" / "primes.json"


@dataclass(frozen=True)
class SatakeData:
    q: int
    satake: tuple[complex, ...]
    chi: complex

    def __post_init__(self):
        if int(self.q) != self.q or self.q < 2:
            raise InputError(f"q must be an integer >= 2, got {self.q}")
        if not self.satake:
            raise InputError("empty Satake parameter list")
        if any(a == 0 for a in self.satake):
            raise InputError("Satake parameters must be nonzero")
        if abs(abs(self.chi) - 1) > 1e-12:
            raise InputError(f"|chi(varpi)| = {abs(self.chi)} is not 1")
        object.__setattr__(self, "satake", tuple(complex(a) for a in self.satake))
        object.__setattr__(self, "chi", complex(self.chi))

    @property
    def n(self) -> int:
        return len(self.satake)

    def eigenvalues(self) -> list[complex]:
        """Eigenvalues of A = diag(a_1..a_n, 1, a_n^-1..a_1^-1)."""
        return [*self.satake, 1 + 0j, *(1 / a for a in reversed(self.satake))]


@dataclass
class FactorizationCheckResult:
    lhs: complex
    rhs_chi2: complex
    rhs_chi: complex
    abs_err_chi2: float
    abs_err_chi: float
    terms_used: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        def c(z):
            return {"re": z.real, "im": z.imag}
        return {
            "lhs": c(self.lhs),
            "rhs_chi2": c(self.rhs_chi2),
            "rhs_chi": c(self.rhs_chi),
            "abs_err_chi2": self.abs_err_chi2,
            "abs_err_chi": self.abs_err_chi,
            "terms_used": list(self.terms_used),
        }


@lru_cache(maxsize=None)
def _one_row_character(n: int, m: int):
    return weyl_character(build_root_datum("B", n), Weight.from_true([m] + [0] * (n - 1)))


def _character(n: int, m: int, cache: CharacterCache | None):
    if cache is None:
        return _one_row_character(n, m)
    return weyl_character(build_root_datum("B", n), Weight.from_true([m] + [0] * (n - 1)), cache)


def convergence_ratio(d: SatakeData, s: complex) -> float:
    r = max(max(abs(a), 1 / abs(a)) for a in d.satake)
    return max(r, 1.0) * d.q ** -(2 * complex(s).real - 0.5)


def local_zeta_with_terms(d: SatakeData, s: complex, tol: float,
                          cache: CharacterCache | None = None) -> tuple[complex, int]:
    """Partial sum of the local zeta series and the number of terms it used.

    Stops once a geometric majorant of the tail drops below ``tol``:
    |chi_m(A)| <= binom(2n+m, m) r^m, and the binomial's successive ratio
    (2n+m+1)/(m+1) decreases in m.
    """
    if tol <= 0:
        raise InputError("tol must be positive")
    s = complex(s)
    r = convergence_ratio(d, s)
    if r > GUARD_RATIO:
        raise DivergenceGuard(f"convergence ratio {r:.4g} exceeds {GUARD_RATIO} at q = {d.q}")
    n = d.n
    x = d.chi * cmath.exp(-(2 * s - 0.5) * math.log(d.q))
    assign = dict(zip(satake_vars(n), d.satake))
    total = 0j
    xm = 1 + 0j
    for m in range(TERM_CAP + 1):
        total += lp_eval_numeric(_character(n, m, cache), assign) * xm
        xm *= x
        rho = r * (2 * n + m + 1) / (m + 1)
        if rho < 1:
            bound = math.comb(2 * n + m, m) * r ** m
            if bound * rho / (1 - rho) < tol:
                return total, m + 1
    raise DivergenceGuard(f"more than {TERM_CAP} terms required at q = {d.q}")


def numeric_local_zeta(d: SatakeData, s: complex, tol: float,
                       cache: CharacterCache | None = None) -> complex:
    return local_zeta_with_terms(d, s, tol, cache)[0]


def closed_form_local_zeta(d: SatakeData, s: complex) -> complex:
    """(1 - x^2) / det(1 - A x) at x = chi q^-(2s - 1/2)."""
    x = d.chi * cmath.exp(-(2 * complex(s) - 0.5) * math.log(d.q))
    den = 1 + 0j
    for e in d.eigenvalues():
        den *= 1 - e * x
    return (1 - x * x) / den


def _local_factor(d: SatakeData, s: complex, kind: str) -> complex:
    s = complex(s)
    if kind == "standard_twisted":
        y = d.chi * cmath.exp(-(2 * s - 0.5) * math.log(d.q))
        den = 1 + 0j
        for e in d.eigenvalues():
            den *= 1 - e * y
    elif kind in ("abelian_chi", "abelian_chi2"):
        c = d.chi if kind == "abelian_chi" else d.chi * d.chi
        den = 1 - c * cmath.exp(-(4 * s - 1) * math.log(d.q))
    else:
        raise InputError(f"unknown kind {kind!r}; expected one of {KINDS}")
    if abs(den) <= POLE_EPS:
        raise PoleProximity(f"local factor at q = {d.q} is within {POLE_EPS} of a pole")
    return 1 / den


def partial_l(data: Sequence[SatakeData], s: complex, kind: str) -> complex:
    """Finite Euler product of local L-factors, reduced in input order."""
    if kind not in KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of {KINDS}")
    out = 1 + 0j
    for d in data:
        out *= _local_factor(d, s, kind)
    return out


def factorization_check(data: Sequence[SatakeData], s: complex, tol: float,
                        cache: CharacterCache | None = None) -> FactorizationCheckResult:
    lhs = 1 + 0j
    used = []
    for d in data:
        z, k = local_zeta_with_terms(d, s, tol, cache)
        lhs *= z
        used.append(k)
    std = partial_l(data, s, "standard_twisted")
    rhs2 = std / partial_l(data, s, "abelian_chi2")
    rhs1 = std / partial_l(data, s, "abelian_chi")
    return FactorizationCheckResult(lhs, rhs2, rhs1, abs(lhs - rhs2), abs(lhs - rhs1), used)


# --- input files -----------------------------------------------------------

def _complex(obj, where: str) -> complex:
    try:
        return complex(float(obj["re"]), float(obj["im"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{where}: expected {{'re': .., 'im': ..}}, got {obj!r}") from exc


def parse_satake_json(doc: dict) -> tuple[int, list[SatakeData]]:
    try:
        n = int(doc["n"])
        primes = doc["primes"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("input needs integer 'n' and list 'primes'") from exc
    out = []
    for i, p in enumerate(primes):
        sat = [_complex(a, f"primes[{i}].satake") for a in p.get("satake", [])]
        if len(sat) != n:
            raise InputError(f"primes[{i}]: {len(sat)} Satake parameters, rank is {n}")
        out.append(SatakeData(p["q"], tuple(sat), _complex(p.get("chi"), f"primes[{i}].chi")))
    return n, out


def load_satake_file(path: str | Path) -> tuple[int, list[SatakeData]]:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    return parse_satake_json(doc)


def random_unitary_data(primes: Sequence[int], n: int, seed: int) -> list[SatakeData]:
    rng = random.Random(seed)
    out = []
    for q in primes:
        sat = tuple(cmath.exp(2j * math.pi * rng.random()) for _ in range(n))
        out.append(SatakeData(q, sat, cmath.exp(2j * math.pi * rng.random())))
    return out


def dump_satake_json(n: int, data: Sequence[SatakeData]) -> str:
    def c(z):
        return {"re": z.real, "im": z.imag}
    doc = {"n": n, "primes": [
        {"q": d.q, "satake": [c(a) for a in d.satake], "chi": c(d.chi)} for d in data]}
    return json.dumps(doc, indent=2) + "\n"

"""Command-line interface.

Exit codes: 0 success, 1 an identity check failed, 2 bad input or usage,
3 an internal invariant was violated.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import euler, zeta
from .characters import CharacterCache, satake_vars, weyl_character, weyl_dimension
from .errors import InputError, InternalError
from .rootdata import Weight, build_root_datum
from .symalg import format_poly, serialize
from .whittaker import cs_whittaker_value

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _weight(text: str) -> list[Fraction]:
    try:
        return [Fraction(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad weight {text!r}") from exc


def _complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) not in (1, 2):
        raise argparse.ArgumentTypeError(f"expected re[,im], got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected re[,im], got {text!r}") from exc
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _order(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("order must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cache-dir", default=None,
                        help="character cache root (default: $SPZETA_CACHE_DIR or ~/.cache/spzeta)")
    common.add_argument("--no-cache", action="store_true", help="skip the disk cache")

    p = _Parser(prog="spzeta", description="Unramified Sp(2n) x GL(1) zeta integral verifier")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="verify a local identity exactly")
    vsub = v.add_subparsers(dest="identity", required=True, parser_class=_Parser)
    for name in ("sp2n", "gln", "sl2"):
        q = vsub.add_parser(name, parents=[common])
        if name != "sl2":
            q.add_argument("--n", "--rank", dest="n", type=int, required=True)
        q.add_argument("--order", type=_order, default=zeta.DEFAULT_ORDER)
        if name != "gln":
            q.add_argument("--chi", type=Fraction, default=None,
                           help="specialize chi(varpi) to a rational for the chi-power comparison")
            q.add_argument("--paper-claim", action="store_true",
                           help="also fail unless the second factor matches L(4s-1, chi)")

    c = sub.add_parser("character", parents=[common], help="Weyl character at Satake parameters")
    c.add_argument("--type", dest="cartan_type", choices=("A", "B", "C"), required=True)
    c.add_argument("--rank", "--n", dest="rank", type=int, required=True)
    c.add_argument("--weight", type=_weight, required=True,
                   help="highest weight in epsilon-coordinates, comma separated")

    w = sub.add_parser("whittaker", parents=[common], help="spherical Whittaker value")
    w.add_argument("--group", choices=("sp2n", "gln"), default="sp2n")
    w.add_argument("--n", "--rank", dest="n", type=int, required=True)
    w.add_argument("--weight", type=_weight, required=True)

    lf = sub.add_parser("lfactor", parents=[common], help="local L-factor denominators")
    lf.add_argument("--n", "--rank", dest="n", type=int, default=None)
    lf.add_argument("--kind", choices=("standard", "chi", "chi2"), default="standard")

    e = sub.add_parser("euler", parents=[common], help="numeric Euler-product factorization check")
    e.add_argument("--input", default=None, help="Satake JSON file (default: shipped example)")
    e.add_argument("--s", type=_complex, default=complex(2.0))
    e.add_argument("--tol", type=_positive_float, default=1e-10)

    k = sub.add_parser("cache", parents=[common], help="inspect or clear the character cache")
    k.add_argument("action", choices=("clear", "stats"))
    return p


def _cache(args) -> CharacterCache | None:
    if args.no_cache:
        return None
    return CharacterCache(args.cache_dir)


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _report_text(rep: zeta.VerificationReport) -> str:
    lines = [
        f"identity: {rep.identity_name}  n={rep.n}  N={rep.order_checked}",
        f"passed: {str(rep.passed).lower()}",
    ]
    if rep.first_failure_order is not None:
        lines.append(f"first_failure_order: {rep.first_failure_order}")
        lines.append(f"coefficient_diff: {format_poly(rep.coefficient_diff)}")
    if rep.chi_power_comparison is not None:
        lines.append(f"chi_power_comparison: {rep.chi_power_comparison}")
    if rep.second_factor is not None:
        lines.append(f"second_factor: {format_poly(rep.second_factor)}")
    lines += [f"note: {n}" for n in rep.notes]
    return "\n".join(lines)


def _cmd_verify(args) -> int:
    cache = _cache(args)
    if args.identity == "sp2n":
        rep = zeta.verify_sp2n_identity(args.n, args.order, args.chi, cache)
    elif args.identity == "sl2":
        rep = zeta.verify_sl2_identity(args.order, args.chi, cache)
    else:
        rep = zeta.verify_gln_identity(args.n, args.order, cache)
    _emit(args, rep.to_dict(), _report_text(rep))
    ok = rep.passed
    if getattr(args, "paper_claim", False):
        ok = ok and rep.chi_power_comparison in (zeta.MATCHES_CHI, zeta.MATCHES_BOTH)
    return EXIT_OK if ok else EXIT_FAILED


def _cmd_character(args) -> int:
    datum = build_root_datum(args.cartan_type, args.rank)
    lam = Weight.from_true(args.weight)
    ch = weyl_character(datum, lam, _cache(args))
    dim = weyl_dimension(datum, lam)
    payload = {
        "type": args.cartan_type,
        "rank": args.rank,
        "weight2": list(lam.coords2),
        "dimension": dim,
        "character": serialize(ch),
        "pretty": format_poly(ch),
    }
    _emit(args, payload, format_poly(ch))
    return EXIT_OK


def _cmd_whittaker(args) -> int:
    group = {"sp2n": "Sp2n", "gln": "GLn"}[args.group]
    w = cs_whittaker_value(group, args.n, Weight.from_true(args.weight), _cache(args))
    payload = {
        "group": group,
        "n": args.n,
        "is_zero": w.is_zero,
        "q_exponent2": w.q_exponent2,
        "char_part": serialize(w.char_part),
    }
    if w.is_zero:
        text = "0"
    else:
        qpow = Fraction(w.q_exponent2, 2)
        text = f"q^({qpow}) * ({format_poly(w.char_part)})"
    _emit(args, payload, text)
    return EXIT_OK


def _cmd_lfactor(args) -> int:
    if args.kind == "standard":
        if args.n is None:
            raise InputError("--n is required for the standard L-factor")
        poly = zeta.standard_lfactor_poly(args.n)
        label = "det(1 - A y)"
    else:
        poly = zeta.abelian_lfactor_poly(1 if args.kind == "chi" else 2)
        label = "1 - c^%d y" % (1 if args.kind == "chi" else 2)
    coeffs = [serialize(c) for c in poly.coeffs]
    text = "\n".join([label] + [f"y^{k}: {format_poly(c)}" for k, c in enumerate(poly.coeffs)])
    _emit(args, {"kind": args.kind, "n": args.n, "series_var": poly.series_var,
                 "coefficients": coeffs}, text)
    return EXIT_OK


def _cmd_euler(args) -> int:
    path = args.input or euler.EXAMPLE_PATH
    n, data = euler.load_satake_file(path)
    res = euler.factorization_check(data, args.s, args.tol, _cache(args))
    passed = res.abs_err_chi2 < 10 * args.tol
    payload = {"n": n, "s": {"re": args.s.real, "im": args.s.imag}, "tol": args.tol,
               "passed": passed, **res.to_dict()}
    text = "\n".join([
        f"primes: {[d.q for d in data]}  n={n}  s={args.s}  tol={args.tol:g}",
        f"lhs (product of local zetas): {res.lhs}",
        f"rhs, L(4s-1, chi^2) reading:  {res.rhs_chi2}   abs_err = {res.abs_err_chi2:.3e}",
        f"rhs, L(4s-1, chi) reading:    {res.rhs_chi}   abs_err = {res.abs_err_chi:.3e}",
        f"terms used per prime: {res.terms_used}",
        f"passed: {str(passed).lower()}",
    ])
    _emit(args, payload, text)
    return EXIT_OK if passed else EXIT_FAILED


def _cmd_cache(args) -> int:
    cache = CharacterCache(args.cache_dir)
    if args.action == "clear":
        removed = cache.clear()
        _emit(args, {"removed": removed, "root": str(cache.root)},
              f"removed {removed} entries from {cache.root}")
    else:
        st = cache.stats()
        _emit(args, st, "\n".join(f"{k}: {v}" for k, v in st.items()))
    return EXIT_OK


COMMANDS = {
    "verify": _cmd_verify,
    "character": _cmd_character,
    "whittaker": _cmd_whittaker,
    "lfactor": _cmd_lfactor,
    "euler": _cmd_euler,
    "cache": _cmd_cache,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except InternalError as exc:
        print(f"spzeta: internal invariant violated: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, OSError) as exc:
        print(f"spzeta: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

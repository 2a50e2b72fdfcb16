"""Command-line front end.

    python -m kummerstokes coeffs --a 1/3 --b 1 --alpha 1/3 --jmax 6
    python -m kummerstokes residual --a 0.75 --b 0.5 --x 20 --M 6 --m0 21
    python -m kummerstokes ghat

Exit status: 0 on success, 1 on usage or precondition errors, 2 when a
derivation or identity check fails.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

import mpmath as mp

from . import exactseries
from .bigeval import PrecisionPolicy
from .errors import CacheError, DerivationError
from .stokes import (
    DEFAULT_K,
    KummerParams,
    TruncationChoice,
    choose_m0,
    coeff_table,
    negative_axis_residual,
    residual_f,
    stokes_report,
    terminant_consistency,
    to_fraction,
)
from .wright import WrightParams, wright_multiplier

PRECISION_ENV = "KUMMERSTOKES_PRECISION"
TABLE_DIGITS = 11


class UsageError(Exception):
    pass


class IdentityViolation(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(flag):
    def parse(text):
        try:
            return to_fraction(text)
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"{flag}: cannot parse {text!r} as a rational")
    return parse


def _default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return 30
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV}={raw!r} is not an integer")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--precision", type=int, default=None, help="target digits")
    common.add_argument("--K", type=int, default=DEFAULT_K, help="even G orders")
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--cache", dest="cache_path", default=None)

    parser = _Parser(prog="kummerstokes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("coeffs", parents=[common], help="A_j and B_j table")
    c.add_argument("--a", type=_rational("--a"), required=True)
    c.add_argument("--b", type=_rational("--b"), required=True)
    c.add_argument("--alpha", type=_rational("--alpha"))
    c.add_argument("--x", type=_rational("--x"))
    c.add_argument("--m0", type=int, dest="m0_override")
    c.add_argument("--jmax", type=int, default=6)

    r = sub.add_parser("residual", parents=[common], help="F(x) against H_M(x)")
    r.add_argument("--a", type=_rational("--a"), required=True)
    r.add_argument("--b", type=_rational("--b"), required=True)
    r.add_argument("--x", type=_rational("--x"), required=True)
    r.add_argument("--M", type=int, default=6)
    r.add_argument("--m0", type=int, dest="m0_override")

    sub.add_parser("ghat", parents=[common], help="verify the printed G-hat polynomials")

    t = sub.add_parser("terminant", parents=[common], help="terminant expansion check")
    t.add_argument("--a", type=_rational("--a"), required=True)
    t.add_argument("--b", type=_rational("--b"), required=True)
    t.add_argument("--x", type=_rational("--x"), required=True)
    t.add_argument("--m0", type=int, dest="m0_override")
    t.add_argument("--j", type=int, default=0)
    t.add_argument("--M", type=int, default=6)

    w = sub.add_parser("wright", parents=[common], help="Wright multiplier estimate")
    w.add_argument("--alpha", type=_rational("--alpha"), required=True)
    w.add_argument("--beta", type=_rational("--beta"))
    w.add_argument("--a", type=_rational("--a"), required=True)
    w.add_argument("--b", type=_rational("--b"), required=True)
    w.add_argument("--x", type=_rational("--x"), required=True)
    w.add_argument("--J", type=int, default=60)

    sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    return parser


def _gpolys(cfg):
    need = 2 * cfg.K + 1
    if cfg.cache_path:
        try:
            gp = exactseries.load_gpolys(cfg.cache_path)
            if len(gp) >= need:
                return gp[:need]
        except CacheError as exc:
            if os.path.exists(cfg.cache_path):
                print(f"warning: rebuilding cache: {exc}", file=sys.stderr)
        gp = exactseries.g_polys(need - 1)
        exactseries.save_gpolys(cfg.cache_path, gp)
        return gp
    return exactseries.g_polys(need - 1)


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _cmd_coeffs(cfg, policy):
    p = KummerParams(cfg.a, cfg.b)
    if cfg.alpha is not None:
        t = TruncationChoice(m0=1, alpha=cfg.alpha, rule="given-alpha")
    elif cfg.x is not None:
        t = choose_m0(p, cfg.x, cfg.m0_override)
    else:
        raise UsageError("coeffs needs --alpha or --x")
    if t.terminating:
        raise UsageError("--a is a positive integer: B_j do not enter the expansion")
    table = coeff_table(p, t, cfg.jmax, cfg.K, _gpolys(cfg))
    with mp.workdps(policy.working()):
        dec = [mp.mpf(v.numerator) / v.denominator for v in table.B]
        if cfg.format == "json":
            return json.dumps({
                "params": {"a": str(p.a), "b": str(p.b)},
                "alpha": str(t.alpha),
                "K": cfg.K,
                "A": [str(v) for v in table.A],
                "B": [str(v) for v in table.B],
                "B_decimal": [mp.nstr(v, policy.target_digits) for v in dec],
            }, indent=2) + "\n"
        if cfg.format == "csv":
            return _csv([["j", "A_j", "B_j"]] + [
                [j, str(a), mp.nstr(b, policy.target_digits)]
                for j, (a, b) in enumerate(zip(table.A, dec))
            ])
        lines = [f"a = {p.a}, b = {p.b}, alpha = {t.alpha}", f"{'j':>3}  {'B_j':>18}"]
        lines += [f"{j:>3}  {mp.nstr(b, TABLE_DIGITS, strip_zeros=False):>18}" for j, b in enumerate(dec)]
        return "\n".join(lines) + "\n"


def _cmd_residual(cfg, policy):
    p = KummerParams(cfg.a, cfg.b)
    report = stokes_report(p, cfg.x, cfg.M, policy, cfg.m0_override, cfg.K, _gpolys(cfg))
    if cfg.format == "json":
        return report.to_json() + "\n"
    if cfg.format == "csv":
        return report.to_csv()
    return report.to_text(TABLE_DIGITS)


def _cmd_ghat(cfg, policy):
    gp = _gpolys(cfg) if cfg.cache_path else exactseries.g_polys(8)
    reports = [exactseries.ghat_check(k, gp) for k in range(5)]
    bad = [r for r in reports if not r.ok]
    if cfg.format == "json":
        out = json.dumps({
            "verified": [r.k for r in reports if r.ok],
            "mismatches": {
                str(r.k): [[i, str(pv), str(dv)] for i, pv, dv in r.mismatches] for r in bad
            },
        }, indent=2) + "\n"
    else:
        out = "k=0..4 verified\n" if not bad else "".join(
            f"k={r.k} mismatch at gamma^{i}: printed {pv}, derived {dv}\n"
            for r in bad for i, pv, dv in r.mismatches
        )
    if bad:
        sys.stdout.write(out)
        raise IdentityViolation("printed polynomial check failed")
    return out


def _cmd_terminant(cfg, policy):
    p = KummerParams(cfg.a, cfg.b)
    t = choose_m0(p, cfg.x, cfg.m0_override)
    if t.terminating:
        raise UsageError("--a is a positive integer: no terminant contribution")
    chk = terminant_consistency(p, cfg.x, t, cfg.j, cfg.M, policy, cfg.K, _gpolys(cfg))
    d = policy.target_digits
    fields = {
        "nu": str(chk.nu),
        "j": chk.j,
        "M": chk.M,
        "T_re": mp.nstr(chk.terminant.real, d),
        "T_im": mp.nstr(chk.terminant.imag, d),
        "expansion_im": mp.nstr(chk.expansion_im, d),
        "re_discrepancy": mp.nstr(chk.re_discrepancy, 6),
        "im_discrepancy": mp.nstr(chk.im_discrepancy, 6),
        "first_omitted": mp.nstr(chk.first_omitted, 6),
    }
    if cfg.format == "json":
        return json.dumps(fields, indent=2) + "\n"
    if cfg.format == "csv":
        return _csv([list(fields), list(fields.values())])
    return "".join(f"{k:>15}  {v}\n" for k, v in fields.items())


def _cmd_wright(cfg, policy):
    beta = cfg.beta if cfg.beta is not None else cfg.alpha
    p = WrightParams(cfg.alpha, beta, cfg.a, cfg.b)
    est = wright_multiplier(p, cfg.x, cfg.J, policy)
    data = est.to_dict()
    if cfg.format == "json":
        return json.dumps(data, indent=2) + "\n"
    flat = {k: v for k, v in data.items() if k != "params"}
    if cfg.format == "csv":
        return _csv([list(flat), list(flat.values())])
    return "".join(f"{k:>20}  {v}\n" for k, v in flat.items())


def _selftest(cfg, policy):
    lines = []

    def record(name, ok):
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name}")
        return ok

    ok = True
    gp = _gpolys(cfg)
    ok &= record("ghat k=0..4", all(exactseries.ghat_check(k, gp).ok for k in range(5)))
    tau = exactseries.tau_series(6).rationals()
    ok &= record("tau series", tau == [1, 1, Fraction(1, 3), Fraction(1, 36),
                                       Fraction(-1, 270), Fraction(1, 4320)])
    p = KummerParams(Fraction(1, 3), 1)
    table = coeff_table(p, TruncationChoice(1, Fraction(1, 3)), 1, cfg.K, gp)
    ok &= record("B_0, B_1 closed forms",
                 table.B[:2] == (Fraction(1, 3), Fraction(4, 27) + Fraction(7, 1620)))
    q = KummerParams(Fraction(3, 4), Fraction(1, 2))
    t = choose_m0(q, 20)
    with mp.workdps(policy.working()):
        f = residual_f(q, 20, t, policy)
        neg = negative_axis_residual(q, 20, t, policy)
        dual = abs(f - mp.exp(20) * neg) <= mp.mpf(10) ** (2 - policy.target_digits) * abs(f)
        ok &= record("Kummer duality (3/4, 1/2, x=20)", bool(dual))
        ok &= record("F(20) = 0.01296444571",
                     abs(f - mp.mpf("0.01296444571")) < mp.mpf("1e-11"))
    out = "\n".join(lines) + "\n"
    if not ok:
        sys.stdout.write(out)
        raise IdentityViolation("self-test failed")
    return out


_COMMANDS = {
    "coeffs": _cmd_coeffs,
    "residual": _cmd_residual,
    "ghat": _cmd_ghat,
    "terminant": _cmd_terminant,
    "wright": _cmd_wright,
    "selftest": _selftest,
}


def run_command(argv=None) -> int:
    try:
        cfg = build_parser().parse_args(argv)
        precision = cfg.precision if cfg.precision is not None else _default_precision()
        if precision < 1:
            raise UsageError("--precision must be positive")
        if cfg.K < 1:
            raise UsageError("--K must be positive")
        policy = PrecisionPolicy(precision)
        out = _COMMANDS[cfg.command](cfg, policy)
    except (DerivationError, IdentityViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0


def main():
    sys.exit(run_command())

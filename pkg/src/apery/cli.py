"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check ran and failed,
2 for usage and parse errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import cauchy, criterion, hanson
from .dsl import parse_certificate
from .errors import DSLSyntaxError, SingularPointError, SupportError, UnboundVariableError
from .numkit import binomial, factorial
from .polyalg import MultiPoly, RatFun
from .sequences import U, V, a, b, casoratian_w, lam, rho, v, z
from .shiftalg import order_reduction_check
from .telescope import (
    GuardedIdentity,
    HyperTerm,
    binomial_term,
    lambda_term,
    verify_hyper_identity,
    verify_pointwise,
)

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

UNIVARIATE = {
    "a": a,
    "b": b,
    "z": z,
    "w": casoratian_w,
    "factorial": factorial,
    "pow2": lambda n: 2 ** n,
}
BIVARIATE = {
    "lambda": lam,
    "binomial": binomial,
    "U": U,
    "V": V,
    "v": v,
}


def u_factor() -> RatFun:
    """U(n, k) = u(n, k) * lambda(n, k)."""
    n, k = MultiPoly.var("n"), MultiPoly.var("k")
    return RatFun(4 * (2 * n + 1) * (k * (2 * k + 1) - (2 * n + 1) ** 2))


def hyper_terms() -> dict:
    return {
        "lambda": lambda_term(),
        "binomial": binomial_term(),
        "U": HyperTerm("U", relative_to=("lambda", u_factor()), direct=U),
    }


class UsageError(Exception):
    pass


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _emit_json(obj, out):
    out.write(json.dumps({"schema": SCHEMA, **obj}, indent=2, default=_q, ensure_ascii=False))
    out.write("\n")


# -- seq ----------------------------------------------------------------------
def cmd_seq(args, out) -> int:
    rows = []
    for n in range(args.max_n + 1):
        rows.append({"n": n, "a": a(n), "b": _q(b(n)), "w": _q(casoratian_w(n)), "rho": _q(rho(n))})
    if args.format == "json":
        _emit_json({"command": "seq", "rows": rows}, out)
    elif args.format == "csv":
        writer = csv.DictWriter(out, fieldnames=["n", "a", "b", "w", "rho"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        for r in rows:
            out.write(f"n={r['n']} a={r['a']} b={r['b']} w={r['w']} rho={r['rho']}\n")
    return EXIT_OK


# -- verify -------------------------------------------------------------------
def _grid(ranges):
    n_lo, n_hi = (int(p.constant_value()) for p in ranges["n"])
    points = []
    for n in range(n_lo, n_hi + 1):
        if "k" in ranges:
            k_lo, k_hi = (int(p.evaluate({"n": n})) for p in ranges["k"])
            points.extend((n, k) for k in range(k_lo, k_hi + 1))
        else:
            points.append((n, 0))
    return points


def _evaluator(name):
    if name in UNIVARIATE:
        f = UNIVARIATE[name]
        return lambda n, k: f(n)
    if name in BIVARIATE:
        return BIVARIATE[name]
    raise UsageError(f"unknown sequence {name!r}")


def run_check(cert, chk) -> dict:
    rec = cert.operators[chk.operator]
    label = f"{chk.operator} {chk.kind} {chk.target}"
    if chk.kind == "reduces":
        if chk.target not in UNIVARIATE:
            raise UsageError(f"order reduction needs a univariate sequence, got {chk.target!r}")
        n_lo, n_hi = (int(p.constant_value()) for p in chk.ranges["n"])
        verdict = order_reduction_check(
            rec, cert.operators[chk.reduced], UNIVARIATE[chk.target],
            range(chk.initial[0], chk.initial[1] + 1), range(n_lo, n_hi + 1),
        )
        body = verdict.to_dict()
        body["status"] = "pass" if verdict.accepted else "fail"
        return {"name": label, "line": chk.line, **body}
    identity = GuardedIdentity.from_operator(label, rec.operator, chk.target, rec.guard)
    if chk.kind == "symbolic":
        terms = hyper_terms()
        if chk.target not in terms:
            verdict = verify_hyper_identity(identity, {})
        else:
            verdict = verify_hyper_identity(identity, terms)
    else:
        verdict = verify_pointwise(identity, {chk.target: _evaluator(chk.target)}, _grid(chk.ranges))
    return {"line": chk.line, **verdict.to_dict()}


def cmd_verify(args, out) -> int:
    if not args.cert:
        raise UsageError("verify needs at least one --cert file")
    results = []
    for path in args.cert:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
        cert = parse_certificate(text)
        if not cert.checks:
            raise UsageError(f"{path}: no verify statements")
        for chk in cert.checks:
            results.append({"file": str(path), **run_check(cert, chk)})
    ok = all(r["status"] == "pass" for r in results)
    if args.json:
        _emit_json({"command": "verify", "status": "pass" if ok else "fail", "results": results}, out)
    else:
        for r in results:
            line = f"{r['status'].upper()} {r['file']}:{r['line']} {r['name']}"
            if r.get("failing_point") is not None:
                line += f" at {tuple(r['failing_point'])}"
            if r.get("reason"):
                line += f": {r['reason']}"
            for f in r.get("failures", []):
                line += f" [{f}]"
            out.write(line + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# -- zeta3 --------------------------------------------------------------------
def cmd_zeta3(args, out) -> int:
    digits = args.digits
    n = 2
    while True:
        enc = cauchy.zeta3_enclosure(n)
        text = cauchy.decimal_digits(enc, digits)
        if text is not None:
            break
        n += 1
    if args.json:
        _emit_json({"command": "zeta3", "digits": digits, "value": text, "n": n, "enclosure": enc.to_dict()}, out)
    else:
        out.write(f"{text}\n")
        out.write(f"certificate: n = {n}, zeta(3) in [lo, hi]\n")
        out.write(f"lo = {_q(enc.lo)}\n")
        out.write(f"hi = {_q(enc.hi)}\n")
    return EXIT_OK


# -- hanson -------------------------------------------------------------------
def cmd_hanson(args, out) -> int:
    report = hanson.hanson_suite(args.max_n, max(args.max_n, args.lcm_max_n))
    if args.json:
        _emit_json({"command": "hanson", **report}, out)
    else:
        for c in report["checks"]:
            extent = c.get("n") or c.get("k") or ""
            out.write(f"{c['status'].upper()} {c['name']} {extent}\n")
        lr = report["lcm_report"]
        out.write(f"{lr['status'].upper()} lcm_bigO_3n n={lr['range']} max l_n/3^n = {lr['max_lcm_over_3n']} at n={lr['max_at']}, "
                  f"envelope decreasing from n={lr['envelope_decreasing_from']}\n")
    return EXIT_OK if report["status"] == "pass" else EXIT_FAIL


# -- criterion ----------------------------------------------------------------
def cmd_criterion(args, out) -> int:
    if args.max_n < 2:
        raise UsageError("criterion needs --max-n >= 2")
    report = criterion.criterion_report(args.max_n)
    if args.json:
        _emit_json({"command": "criterion", **report.to_dict()}, out)
    else:
        for part in ("integrality", "growth", "positivity", "decay"):
            verdict = getattr(report, part)
            out.write(f"{verdict['status'].upper()} {part} n={verdict['range']}\n")
        decay = report.decay
        last = decay["rows"][-1]
        out.write(f"decay: n0 = {decay['n0']}, bound({last.n}) = {float(last.exact):.3e}, "
                  f"envelope({last.n}) = {float(last.envelope):.3e}\n")
    return EXIT_OK if report.passed else EXIT_FAIL


# -- refute -------------------------------------------------------------------
def cmd_refute(args, out) -> int:
    try:
        x = criterion.parse_rational(args.target)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational: {args.target!r}") from exc
    report = criterion.contradiction_demo(x.numerator, x.denominator, args.max_n)
    if args.json:
        _emit_json({"command": "refute", **report}, out)
    elif report["refuted"]:
        out.write(f"zeta(3) != {report['target']}: witness n = {report['witness']}")
        if report["enclosure_witness"] is not None:
            out.write(f" (outside enclosure at n = {report['enclosure_witness']}, {report['side']})")
        if report["integer_gap_witness"] is not None:
            out.write(f"; integer gap at n = {report['integer_gap_witness']}")
        out.write("\n")
    else:
        out.write(f"{report['target']} not refuted for n <= {args.max_n}\n")
    return EXIT_OK if report["refuted"] else EXIT_FAIL


def _positive(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="apery", description="Exact checks around the irrationality of zeta(3).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", help="table of a_n, b_n, w_n, rho_n")
    p.add_argument("--max-n", type=_positive, default=10)
    p.add_argument("--format", choices=("csv", "json", "text"), default="text")
    p.add_argument("--json", action="store_const", const="json", dest="format")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("verify", help="check the statements of certificate files")
    p.add_argument("--cert", action="append", default=[], metavar="PATH")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("zeta3", help="certified decimal digits of zeta(3)")
    p.add_argument("--digits", type=_positive, default=20)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_zeta3)

    p = sub.add_parser("hanson", help="lemma-by-lemma check of lcm(1..n) = O(3^n)")
    p.add_argument("--max-n", type=_positive, default=500)
    p.add_argument("--lcm-max-n", type=_positive, default=2000, help="range for l_n <= C(n) and the O(3^n) report")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hanson)

    p = sub.add_parser("criterion", help="integrality, growth, positivity and decay report")
    p.add_argument("--max-n", type=_positive, default=100)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_criterion)

    p = sub.add_parser("refute", help="refute zeta(3) = p/q")
    p.add_argument("target", metavar="p/q")
    p.add_argument("--max-n", type=_positive, default=50)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_refute)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "hanson" and args.max_n < 2:
        sys.stderr.write("apery: error: hanson needs --max-n >= 2\n")
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except DSLSyntaxError as exc:
        sys.stderr.write(f"apery: parse error: {exc}\n")
    except UnboundVariableError as exc:
        sys.stderr.write(f"apery: parse error: {exc}\n")
    except UsageError as exc:
        sys.stderr.write(f"apery: error: {exc}\n")
    except (SingularPointError, SupportError) as exc:
        sys.stderr.write(f"apery: error: {exc}\n")
        return EXIT_FAIL
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

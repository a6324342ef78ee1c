"""Command-line interface: ``berndt-forge {eval,table,sums,conjecture,selftest}``.

Exit codes: 0 success, 2 invalid spec or arguments, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .contour import IntegralSpec, berndt_eval
from .errors import BerndtError, DomainError, SpecError
from .families import SumFamily
from .latex import format_latex, latex_terms_equal
from .numerics.core import _y_of_x, digits_to_bits, make_ctx
from .numerics.evaluate import eval_qxy, eval_zring
from .numerics.quad import quad_berndt
from .numerics.series import sum_series_ctx
from .paper_examples import EXAMPLES, MEMBERSHIP_DISPLAYS
from .zring.ring import format_key
from .zring.special import QXYPoly

__all__ = ["main", "OutputRecord", "build_parser", "SCHEMA", "DIGITS_ENV"]

SCHEMA = "berndt-forge/1"
DIGITS_ENV = "BERNDT_FORGE_DIGITS"
DEFAULT_DIGITS = 60
GUARD_DIGITS = 20

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_MISMATCH = 3

FAMILY_TAGS = {"sbar": "Sbar", "ctilde": "Ctilde", "cprime": "Cprime", "s2": "S"}


@dataclass
class OutputRecord:
    a: int
    m: int
    sign: str
    poly: list[dict]
    latex: str
    numeric: str
    verification: dict | None = None
    schema: str = field(default=SCHEMA)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        data = json.loads(text)
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported schema {data.get('schema')!r}")
        return cls(**data)

    def to_poly(self) -> QXYPoly:
        return QXYPoly({(t["x_deg"], t["y_deg"]): Fraction(t["coeff"]) for t in self.poly})


def default_digits() -> int:
    raw = os.environ.get(DIGITS_ENV)
    if not raw:
        return DEFAULT_DIGITS
    try:
        value = int(raw)
    except ValueError:
        raise SystemExit(f"{DIGITS_ENV} must be an integer, got {raw!r}")
    if value < 20:
        raise SystemExit(f"{DIGITS_ENV} must be at least 20")
    return value


def poly_terms(poly: QXYPoly) -> list[dict]:
    return [{"coeff": f"{c.numerator}/{c.denominator}", "x_deg": i, "y_deg": j}
            for (i, j), c in poly.items()]


def _magnitude_digits(poly: QXYPoly) -> int:
    approx = abs(float(eval_qxy(poly, 64))) if len(poly) else 0.0
    return max(0, int(math.log10(approx)) + 1) if approx > 1 else 0


def numeric_value(poly: QXYPoly, digits: int):
    """Value of poly with ``digits`` digits after the decimal point."""
    return eval_qxy(poly, digits_to_bits(digits + _magnitude_digits(poly) + 10))


def verify_poly(spec, poly: QXYPoly, digits: int, tol: int) -> dict:
    """Compare the exact value with quadrature at ``digits`` absolute digits."""
    rep = quad_berndt(spec, digits_to_bits(digits))
    want = numeric_value(poly, digits + 10)
    ctx = make_ctx(want.context.prec)
    diff = abs(ctx.mpf(rep.value) - want)
    agree = digits if not diff else min(digits, max(0, int(-ctx.log10(diff))))
    return {
        "quadValue": ctx.nstr(rep.value, digits + _magnitude_digits(poly)),
        "absDiff": ctx.nstr(diff, 5),
        "digits": agree,
        "tolerance": tol,
        "passed": bool(diff < ctx.mpf(10) ** (-tol)),
    }


def make_record(spec: IntegralSpec, poly: QXYPoly, digits: int) -> OutputRecord:
    val = numeric_value(poly, digits)
    text = make_ctx(val.context.prec).nstr(val, digits + _magnitude_digits(poly))
    return OutputRecord(spec.a, spec.m, spec.sign, poly_terms(poly), format_latex(poly), text)


def format_plain_poly(poly: QXYPoly) -> str:
    if not len(poly):
        return "0"
    parts = []
    for (i, j), c in poly.items():
        mono = " ".join(p for p in (f"X^{i}" if i else "", f"Y^{j}" if j else "") if p)
        sign = "-" if c < 0 else "+"
        body = f"{abs(c)}" + (f" {mono}" if mono else "")
        parts.append(f"{sign} {body}")
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else out


# -- eval -----------------------------------------------------------------

def cmd_eval(args) -> int:
    try:
        spec = IntegralSpec(args.a, args.m, args.sign)
    except SpecError as exc:
        print(f"invalid spec: {exc}", file=sys.stderr)
        return EXIT_INVALID
    poly = berndt_eval(spec)
    record = make_record(spec, poly, args.prec)
    tol = args.tol if args.tol is not None else args.prec - GUARD_DIGITS
    if args.verify:
        record.verification = verify_poly(spec, poly, args.prec, tol)
    if args.format == "json":
        print(record.to_json())
    elif args.format == "latex":
        print(record.latex)
    else:
        op = "+" if spec.sign == "plus" else "-"
        print(f"int_0^oo x^{spec.a} / (cos x {op} cosh x)^{spec.m} dx")
        print(f"  = {format_plain_poly(poly)}")
        print("  with X = Gamma(1/4)^4, Y = 1/pi")
        print(f"  ~ {record.numeric}")
        if record.verification:
            v = record.verification
            verdict = "PASS" if v["passed"] else "FAIL"
            print(f"quadrature {v['quadValue']}")
            print(f"|exact - quad| = {v['absDiff']} (tolerance 1e-{tol}): {verdict}")
    if record.verification and not record.verification["passed"]:
        return EXIT_MISMATCH
    return EXIT_OK


# -- table ----------------------------------------------------------------

def _diff_lines(got: QXYPoly, want: QXYPoly) -> list[str]:
    out = []
    for key in sorted(set(got.monomials()) | set(want.monomials())):
        if got[key] != want[key]:
            out.append(f"    X^{key[0]} Y^{key[1]}: computed {got[key]}, displayed {want[key]}")
    return out


def table_rows(examples=EXAMPLES, digits: int = DEFAULT_DIGITS) -> list[dict]:
    rows = []
    tol = digits - GUARD_DIGITS
    for ex in examples:
        spec = IntegralSpec(ex.a, ex.m, ex.sign)
        got = berndt_eval(spec)
        want = ex.expected_poly()
        shown = -got if ex.sign_erratum else got
        check = verify_poly(spec, got, digits, tol)
        rows.append({
            "kind": "example",
            "spec": [ex.a, ex.m, ex.sign],
            "printed": ex.printed,
            "xy_form": format_latex(got),
            "exact": got == want,
            "latex": latex_terms_equal(format_latex(shown), ex.normalized or ex.printed),
            "numeric": check["passed"],
            "absDiff": check["absDiff"],
            "note": ex.notes if ex.sign_erratum else "",
            "diff": _diff_lines(got, want),
        })
    for sign, m, a_of, p0, support in MEMBERSHIP_DISPLAYS:
        for p in range(p0, p0 + 3):
            spec = IntegralSpec(a_of(p), m, sign)
            got = berndt_eval(spec)
            outside = sorted(set(got.monomials()) - support(p))
            rows.append({
                "kind": "membership",
                "spec": [spec.a, m, sign],
                "xy_form": format_latex(got),
                "exact": not outside,
                "latex": True,
                "numeric": True,
                "note": "",
                "diff": [f"    X^{i} Y^{j} outside the displayed span" for i, j in outside],
            })
    return rows


def _row_passed(row: dict) -> bool:
    return row["exact"] and row["latex"] and row["numeric"]


def run_table(examples=EXAMPLES, digits: int = DEFAULT_DIGITS, fmt: str = "plain", out=print) -> int:
    rows = table_rows(examples, digits)
    if fmt == "json":
        out(json.dumps({"schema": SCHEMA, "rows": rows}, indent=2))
    else:
        for row in rows:
            a, m, sign = row["spec"]
            tag = "PASS" if _row_passed(row) else "FAIL"
            if row["kind"] == "example":
                out(f"{tag} ({a},{m},{sign}) exact={row['exact']} latex={row['latex']} "
                    f"numeric={row['numeric']} |diff|={row['absDiff']}")
                out(f"    displayed: {row['printed']}")
                out(f"    X,Y form:  {row['xy_form']}")
            else:
                out(f"{tag} ({a},{m},{sign}) membership in the displayed span")
            if row["note"]:
                out(f"    sign erratum: {row['note']}")
            for line in row["diff"]:
                out(line)
        passed = sum(_row_passed(r) for r in rows)
        out(f"{passed}/{len(rows)} rows pass")
    return EXIT_OK if all(_row_passed(r) for r in rows) else EXIT_MISMATCH


def cmd_table(args) -> int:
    if not args.paper_examples:
        print("nothing to do: pass --paper-examples", file=sys.stderr)
        return EXIT_INVALID
    return run_table(EXAMPLES, args.prec, args.format)


# -- sums -----------------------------------------------------------------

def cmd_sums(args) -> int:
    from .hyperbolic_sums.reduce import reduced_element

    try:
        fam = SumFamily(FAMILY_TAGS[args.family], args.p, args.m)
        elem = reduced_element(fam)
    except DomainError as exc:
        print(f"invalid sum: {exc}", file=sys.stderr)
        return EXIT_INVALID
    terms = [{"monomial": format_key(k), "coeff": str(c)} for k, c in elem.sorted_items()]
    result = {"schema": SCHEMA, "family": fam.tag, "p": fam.p, "m": fam.m, "terms": terms}
    status = EXIT_OK
    if args.x is not None:
        try:
            x = Fraction(args.x)
        except (ValueError, ZeroDivisionError):
            print(f"--x must be a rational, got {args.x!r}", file=sys.stderr)
            return EXIT_INVALID
        if not 0 < x < 1:
            print("--x must lie in (0, 1)", file=sys.stderr)
            return EXIT_INVALID
        bits = digits_to_bits(args.prec) + 32
        ctx = make_ctx(bits)
        closed = eval_zring(elem, x, bits)
        series = sum_series_ctx(ctx, fam, _y_of_x(ctx, ctx.mpf(x.numerator) / x.denominator))
        diff = abs(ctx.mpf(closed) - series)
        tol = args.prec - GUARD_DIGITS
        ok = diff <= ctx.mpf(10) ** (-tol) * max(abs(series), 1)
        result["check"] = {"x": str(x), "closed_form": ctx.nstr(closed, args.prec),
                           "series": ctx.nstr(series, args.prec), "absDiff": ctx.nstr(diff, 5),
                           "passed": bool(ok)}
        status = EXIT_OK if ok else EXIT_MISMATCH
    if args.format == "json":
        print(json.dumps(result, indent=2))
    else:
        print(f"{fam} =")
        for t in terms:
            print(f"  + ({t['coeff']}) * {t['monomial']}")
        if "check" in result:
            c = result["check"]
            print(f"at x = {c['x']}: closed form {c['closed_form']}")
            print(f"           series      {c['series']}")
            print(f"|diff| = {c['absDiff']}: {'PASS' if c['passed'] else 'FAIL'}")
    return status


# -- conjecture -----------------------------------------------------------

def cmd_conjecture(args) -> int:
    from .conjecture import N_MAX, check_x9m6, screen

    if args.id == "x9m6":
        rep = check_x9m6(args.prec)
        print(f"quadrature  {rep.quad_value}")
        print(f"conjecture  {rep.conjectured_value}")
        print(f"|diff| = {rep.abs_diff:.3e}, agreement {rep.agreement_digits} digits "
              f"({'consistent' if rep.passed else 'NOT consistent'} at the 40-digit bar)")
        return EXIT_OK
    if not 1 <= args.n_max <= N_MAX:
        print(f"--n-max must be in 1..{N_MAX}", file=sys.stderr)
        return EXIT_INVALID
    for v in screen(args.id, args.n_max, args.prec):
        verdict = "in span" if v.in_span else "NOT in span"
        poly = v.value_poly()
        value = format_latex(poly) if poly is not None else str(v.value_terms)
        print(f"n={v.n} {v.parity:4s} x^{v.a}/(cos x + cosh x)^{v.m}: {verdict} [{v.method}] {v.detail}")
        print(f"    value = {value}")
    print("numerical evidence only; these are not proofs")
    return EXIT_OK


# -- selftest -------------------------------------------------------------

def cmd_selftest(args) -> int:
    from .selftest import run

    return EXIT_OK if run(deep=args.deep) == 0 else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    digits = default_digits()
    parser = argparse.ArgumentParser(
        prog="berndt-forge",
        description="Exact closed forms of int_0^oo x^a / (cos x +/- cosh x)^m dx in Q[Gamma(1/4)^4, 1/pi].")
    parser.add_argument("--fixtures", metavar="DIR",
                        help="directory of frozen fitted-base fixtures (default: packaged data)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="exact value of one integral")
    p.add_argument("--sign", choices=["plus", "minus"], required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--format", choices=["plain", "latex", "json"], default="plain")
    p.add_argument("--verify", action="store_true", help="compare against quadrature")
    p.add_argument("--prec", type=int, default=digits, metavar="DIGITS")
    p.add_argument("--tol", type=int, default=None, metavar="NEGEXP",
                   help="pass when |exact - quad| < 10^-NEGEXP (default DIGITS - 20)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", help="recompute the reference closed forms")
    p.add_argument("--paper-examples", action="store_true")
    p.add_argument("--prec", type=int, default=digits, metavar="DIGITS")
    p.add_argument("--format", choices=["plain", "json"], default="plain")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("sums", help="closed form of a power-m hyperbolic sum")
    p.add_argument("--family", choices=sorted(FAMILY_TAGS), required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--x", default=None, metavar="RATIONAL")
    p.add_argument("--prec", type=int, default=digits, metavar="DIGITS")
    p.add_argument("--format", choices=["plain", "json"], default="plain")
    p.set_defaults(func=cmd_sums)

    p = sub.add_parser("conjecture", help="numerical screening of the stated conjectures")
    p.add_argument("--id", choices=["plus-x1", "plus-x5", "x9m6"], required=True)
    p.add_argument("--n-max", type=int, default=2)
    p.add_argument("--prec", type=int, default=digits, metavar="DIGITS")
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("selftest", help="run the invariant suite")
    p.add_argument("--deep", action="store_true", help="extended grids")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "prec", DEFAULT_DIGITS) < 20:
        print("--prec must be at least 20 digits", file=sys.stderr)
        return EXIT_INVALID
    if args.fixtures:
        from .hyperbolic_sums.fixtures import set_fixture_dir

        set_fixture_dir(args.fixtures)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"invalid spec: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BerndtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    raise SystemExit(main())

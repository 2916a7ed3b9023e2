"""Command-line entry point: ``fareybound <command> ...``.

Exit status is 0 on success, 2 on invalid input and 3 when a root set or a
certificate cannot be certified.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Callable

from . import reference
from .farey import ORDERINGS, FareyFraction, enumerate_fractions, farey_word, format_word, sign_sequence
from .geometry import gamma_from_mu, gap_closed_form
from .roots import RootFindingError, find_roots, residual_certify
from .spectrum import (
    DEFAULT_ORDERING,
    BoundRecord,
    best_bound,
    bound_for_fraction,
    ellipse_functional,
    infinite_row,
    riley_asymptotic,
    spectral_gap,
    table1,
    table2,
)
from .symalg import INF, farey_trace_polynomial, format_order, parse_order
from .verify import rouche_root_stability

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNCERTIFIED = 3


class Output:
    """What a command produced, renderable as text, JSON or CSV."""

    def __init__(self, payload, text: str, rows: list[list] | None = None, header: list[str] | None = None, status: int = EXIT_OK):
        self.payload = payload
        self.text = text
        self.rows = rows
        self.header = header
        self.status = status

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.payload, indent=2)
        if fmt == "csv":
            if self.rows is None:
                raise ValueError("this command has no CSV form")
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(self.header)
            writer.writerows(self.rows)
            return buf.getvalue().rstrip("\n")
        return self.text


def _num(x, digits: int) -> str:
    if x is None:
        return "-"
    if isinstance(x, complex):
        return f"{x.real:.{digits}g}{x.imag:+.{digits}g}i"
    return f"{x:.{digits}g}"


def _fraction(text: str) -> FareyFraction:
    try:
        return FareyFraction.parse(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _order(text: str):
    try:
        return parse_order(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _record_text(rec: BoundRecord, d: int) -> str:
    lines = [
        f"p = {format_order(rec.p)}, q = {format_order(rec.q)}",
        f"fraction        {rec.fraction}",
        f"route           {rec.route}",
        f"mu0             {_num(rec.mu0, d)}",
        f"ellipse value   {_num(rec.ellipse_value, d)}",
        f"delta_inf <=    {_num(rec.delta_inf_bound, d)}",
        f"delta_1         {_num(rec.delta_one, d)}",
        f"gap             {_num(rec.gap, d)}",
    ]
    return "\n".join(lines)


_RECORD_HEADER = ["p", "q", "fraction", "route", "mu0_re", "mu0_im", "ellipse_value", "delta_inf_bound", "delta_one", "gap"]


def _record_row(rec: BoundRecord) -> list:
    return [
        format_order(rec.p), format_order(rec.q), str(rec.fraction), rec.route,
        repr(rec.mu0.real), repr(rec.mu0.imag), repr(rec.ellipse_value),
        "" if rec.delta_inf_bound is None else repr(rec.delta_inf_bound),
        "" if rec.delta_one is None else repr(rec.delta_one),
        "" if rec.gap is None else repr(rec.gap),
    ]


# -- commands -----------------------------------------------------------------


def cmd_word(args) -> Output:
    f = args.fraction
    signs = sign_sequence(f)
    word = format_word(farey_word(f))
    text = f"{word}\nsigns: {' '.join('+1' if e > 0 else '-1' for e in signs)}"
    return Output({"fraction": str(f), "signs": list(signs), "word": word}, text,
                  [[str(f), i + 1, e] for i, e in enumerate(signs)], ["fraction", "index", "sign"])


def cmd_poly(args) -> Output:
    P = farey_trace_polynomial(args.fraction, args.p, args.q)
    coeffs = P.coeffs
    exact = P.is_integral()

    def enc(c):
        if exact:
            return c
        z = complex(c)
        return [z.real, z.imag]

    payload = {
        "fraction": str(args.fraction), "p": format_order(args.p), "q": format_order(args.q),
        "degree": P.degree, "exact": exact, "coefficients_ascending": [enc(c) for c in coeffs],
    }
    text = P.format(digits=args.digits)
    rows = [[k, c if exact else complex(c).real, 0 if exact else complex(c).imag] for k, c in enumerate(coeffs)]
    return Output(payload, text, rows, ["degree", "re", "im"])


def cmd_roots(args) -> Output:
    P = farey_trace_polynomial(args.fraction, args.p, args.q)
    rs = find_roots(P, args.tol)
    err = residual_certify(P, rs)
    funcs = [ellipse_functional(z, args.p, args.q) for z in rs.roots]
    d = args.digits
    lines = [f"{'root':>28}  {'|root|':>10}  {'functional':>10}  residual"]
    for z, r, v in zip(rs.roots, rs.residuals, funcs):
        lines.append(f"{_num(z, d):>28}  {_num(abs(z), d):>10}  {_num(v, d):>10}  {r:.2e}")
    lines.append(f"reconstruction error {err:.2e}")
    payload = {
        "fraction": str(args.fraction), "p": format_order(args.p), "q": format_order(args.q),
        "roots": [[z.real, z.imag] for z in rs.roots], "residuals": list(rs.residuals),
        "functional": funcs, "reconstruction_error": err,
    }
    rows = [[z.real, z.imag, abs(z), v, r] for z, r, v in zip(rs.roots, rs.residuals, funcs)]
    return Output(payload, "\n".join(lines), rows, ["root_re", "root_im", "modulus", "functional", "residual"])


def cmd_bound(args) -> Output:
    if args.fraction is not None:
        rec = bound_for_fraction(args.fraction, args.p, args.q)
    else:
        rec = best_bound(args.p, args.q, args.budget, ordering=args.ordering, workers=args.workers)
    return Output(rec.to_dict(), _record_text(rec, args.digits), [_record_row(rec)], _RECORD_HEADER)


def cmd_table1(args) -> Output:
    recs = table1(args.budget, ordering=args.ordering)
    d = args.digits
    lines = [f"{'p':>4}  {'fraction':>8}  {'delta_inf(2,p) <=':>18}  {'delta_1':>8}  {'ref fraction':>12}  {'ref bound':>9}"]
    for rec in recs:
        ref = reference.TABLE1.get(rec.q, ("-", None, None))
        lines.append(
            f"{rec.q:>4}  {str(rec.fraction):>8}  {_num(rec.delta_inf_bound, d):>18}  "
            f"{_num(rec.delta_one, d):>8}  {ref[0]:>12}  {_num(ref[1], d):>9}"
        )
    riley = riley_asymptotic(args.budget or 257, ordering=args.ordering)
    lines.append(
        f"{'inf':>4}  {str(riley.fraction):>8}  arccosh({_num(riley.cosh_constant, d)}/(2 sin(pi/p)))"
    )
    payload = {"rows": [r.to_dict() for r in recs], "riley": riley.to_dict()}
    return Output(payload, "\n".join(lines), [_record_row(r) for r in recs], _RECORD_HEADER)


def _grid(args):
    recs = table2(args.budget, ordering=args.ordering)
    recs.update(infinite_row(args.budget, ordering=args.ordering))
    return recs


def _grid_text(recs, cell: Callable[[BoundRecord], str], ref: dict, d: int) -> str:
    cols = reference.TABLE_COLUMNS
    width = max(10, d + 5)
    lines = [" " * 5 + "".join(f"{c:>{width}}" for c in cols)]
    for p in (*reference.TABLE_ROWS, INF):
        ours = "".join(f"{cell(recs[(p, q)]) if (p, q) in recs else '':>{width}}" for q in cols)
        theirs = "".join(f"{str(ref.get((p, q), '')):>{width}}" for q in cols)
        lines.append(f"{format_order(p):>5}" + ours)
        lines.append(f"{'ref':>5}" + theirs)
    return "\n".join(lines)


def cmd_table2(args) -> Output:
    recs = _grid(args)
    d = args.digits
    text = _grid_text(recs, lambda r: _num(r.ellipse_value, d), reference.TABLE2, d)
    payload = [r.to_dict() for r in recs.values()]
    return Output(payload, text, [_record_row(r) for r in recs.values()], _RECORD_HEADER)


def cmd_table3(args) -> Output:
    recs = _grid(args)
    text = _grid_text(recs, lambda r: str(r.fraction), reference.TABLE3, args.digits)
    payload = [r.to_dict() for r in recs.values()]
    return Output(payload, text, [_record_row(r) for r in recs.values()], _RECORD_HEADER)


def cmd_gap(args) -> Output:
    if args.universal:
        value = gap_closed_form()
        return Output({"universal_gap": value}, _num(value, args.digits), [[value]], ["universal_gap"])
    if args.p is None or args.q is None:
        raise ValueError("gap needs --p and --q, or --universal")
    value = spectral_gap(args.p, args.q, args.budget, ordering=args.ordering)
    payload = {"p": format_order(args.p), "q": format_order(args.q), "gap": value}
    return Output(payload, _num(value, args.digits), [[format_order(args.p), format_order(args.q), value]], ["p", "q", "gap"])


def cmd_certify(args) -> Output:
    cert = rouche_root_stability(
        args.fraction, args.s, inner_radius=args.inner_radius, outer_radius=args.outer_radius, samples=args.samples
    )
    d = args.digits
    lines = [f"{'root':>28}  {'radius':>8}  {'min|P| >=':>10}  {'tail <=':>10}  ok"]
    for c in cert.circles:
        lines.append(
            f"{_num(c.root, d):>28}  {c.circle.radius:>8.4g}  {_num(c.circle.min_modulus_lower, d):>10}  "
            f"{_num(c.tail_bound, d):>10}  {'yes' if c.passed else 'NO'}"
        )
    lines.append(f"minimal order {cert.minimal_order}; localized radius {cert.localized_radius:g}")
    lines.append(f"verdict: {cert.verdict}")
    lines.extend(f"  {msg}" for msg in cert.failures)
    rows = [
        [c.root.real, c.root.imag, c.circle.radius, c.circle.min_modulus_lower, c.tail_bound, c.passed]
        for c in cert.circles
    ]
    return Output(cert.to_dict(), "\n".join(lines), rows,
                  ["root_re", "root_im", "radius", "min_modulus_lower", "tail_bound", "passed"],
                  EXIT_OK if cert.passed else EXIT_UNCERTIFIED)


def cmd_rootcloud(args) -> Output:
    budget = args.budget or 257
    rows = []
    for f in enumerate_fractions(budget, args.ordering):
        rs = find_roots(farey_trace_polynomial(f, args.p, args.q), polish=False)
        for z in rs.roots:
            g = gamma_from_mu(z, args.p, args.q)
            rows.append([str(f), repr(z.real), repr(z.imag), repr(g.real), repr(g.imag), repr(ellipse_functional(z, args.p, args.q))])
    header = ["fraction", "root_re", "root_im", "gamma_re", "gamma_im", "functional"]
    payload = [dict(zip(header, r)) for r in rows]
    text = f"{len(rows)} roots from {budget} fractions; use --format csv for the data"
    return Output(payload, text, rows, header)


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default=None)
    common.add_argument("--digits", type=_positive_int, default=6, help="significant digits in text output")
    common.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")

    def orders(sp, required=True, default=None):
        sp.add_argument("--p", type=_order, required=required, default=default, help="order of X (integer >= 2 or inf)")
        sp.add_argument("--q", type=_order, required=required, default=default, help="order of Y (integer >= 2 or inf)")

    def search(sp):
        sp.add_argument("--budget", type=_positive_int, default=None, help="number of fractions searched")
        sp.add_argument("--ordering", choices=ORDERINGS, default=DEFAULT_ORDERING)

    parser = argparse.ArgumentParser(prog="fareybound", description="Farey polynomial bounds for elliptic axial distances.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("word", parents=[common], help="sign sequence and word of a fraction")
    sp.add_argument("fraction", type=_fraction)
    sp.set_defaults(run=cmd_word)

    sp = sub.add_parser("poly", parents=[common], help="trace polynomial coefficients")
    sp.add_argument("fraction", type=_fraction)
    orders(sp, required=False, default=INF)
    sp.set_defaults(run=cmd_poly)

    sp = sub.add_parser("roots", parents=[common], help="certified roots of a trace polynomial")
    sp.add_argument("fraction", type=_fraction)
    orders(sp, required=False, default=INF)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.set_defaults(run=cmd_roots)

    sp = sub.add_parser("bound", parents=[common], help="best bound for delta_inf(p, q)")
    orders(sp)
    search(sp)
    sp.add_argument("--fraction", type=_fraction, default=None, help="evaluate one fraction instead of searching")
    sp.add_argument("--workers", type=_positive_int, default=1)
    sp.set_defaults(run=cmd_bound)

    for name, fn, text in (
        ("table1", cmd_table1, "bounds for delta_inf(2, p)"),
        ("table2", cmd_table2, "ellipse constants c(p, q)"),
        ("table3", cmd_table3, "fractions attaining c(p, q)"),
    ):
        sp = sub.add_parser(name, parents=[common], help=text)
        search(sp)
        sp.set_defaults(run=fn)

    sp = sub.add_parser("gap", parents=[common], help="spectral gap delta_inf - delta_1")
    orders(sp, required=False)
    search(sp)
    sp.add_argument("--universal", action="store_true", help="the cap over all (p, q)")
    sp.set_defaults(run=cmd_gap)

    sp = sub.add_parser("certify", parents=[common], help="root stability certificate")
    sp.add_argument("fraction", type=_fraction)
    sp.add_argument("--s", type=float, default=0.005, help="deformation size")
    sp.add_argument("--inner-radius", type=float, default=1 / 2000)
    sp.add_argument("--outer-radius", type=float, default=0.025)
    sp.add_argument("--samples", type=_positive_int, default=2**16)
    sp.set_defaults(run=cmd_certify)

    sp = sub.add_parser("rootcloud", parents=[common], help="all roots and commutator values as CSV")
    orders(sp)
    search(sp)
    sp.set_defaults(run=cmd_rootcloud, default_format="csv")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or getattr(args, "default_format", "text")
    try:
        out = args.run(args)
        rendered = out.render(fmt)
    except RootFindingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(rendered + "\n")
    else:
        print(rendered)
    return out.status


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``djkm {reduce,psi,pfamily,gegenbauer,series,verify}``.

Data goes to stdout, diagnostics to stderr.  Exit status is 0 on success,
1 when a verification sweep fails and 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from pathlib import Path

from .algebra import PSI_READING, psi
from .arith import RatFuncC, as_rational, format_latex, format_ratfunc, specialize_c
from .liealg import LieAlgebraError, build_sl2, load_structure_constants
from .omega import BASIS_KEYS, OmegaClass, reduce
from .pfamilies import FAMILIES, gegenbauer, pfamily_recursion, pfamily_series
from .ring import DiffNormalForm, djkm_curve, parse_ring, ring_d
from .verify import CHECKS, verify

DEFAULT_TRUNCATION = 64
LATEX_BASIS = (r"\omega_0", r"\omega_{-1}", r"\omega_{-2}", r"\omega_{-3}", r"\omega_{-4}")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-1/2" through as a value rather than an option
        self._negative_number_matcher = re.compile(r"^-\d+$|^-\d*\.\d+$|^-\d+/\d+$")

    def error(self, message):
        raise UsageError(message)


def _rational(text: str):
    try:
        return as_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _default_truncation() -> int:
    raw = os.environ.get("DJKM_TRUNCATION")
    if not raw:
        return DEFAULT_TRUNCATION
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"DJKM_TRUNCATION must be an integer, got {raw!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "latex"), default="json")
    common.add_argument("--c", dest="c_value", type=_rational, default=None, help="specialize c to a rational")

    parser = _Parser(prog="djkm", description="Central extension of the DJKM current algebra, computed exactly.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("reduce", parents=[common], help="reduce a differential f*dg (or f*dt) to the basis")
    p.add_argument("--expr", required=True, help="ring element f, e.g. 't^4*u'")
    p.add_argument("--d", dest="dexpr", default=None, help="ring element g in f*dg; default is f*dt")

    p = sub.add_parser("psi", parents=[common], help="tabulate psi(s)")
    p.add_argument("--smin", type=int, default=-6)
    p.add_argument("--smax", type=int, default=6)

    p = sub.add_parser("pfamily", parents=[common], help="tabulate P_{f,k}(c)")
    p.add_argument("--family", type=int, choices=FAMILIES, default=None)
    p.add_argument("--kmax", type=int, default=12)

    p = sub.add_parser("gegenbauer", parents=[common], help="tabulate Gegenbauer polynomials")
    p.add_argument("--lambda", dest="lam", type=_rational, default=_rational("-1/2"))
    p.add_argument("--nmax", type=int, default=10)

    p = sub.add_parser("series", parents=[common], help="generating series of a P-family")
    p.add_argument("--family", type=int, choices=FAMILIES, required=True)
    p.add_argument("--N", type=int, default=None, help="truncation order (default $DJKM_TRUNCATION or 64)")

    p = sub.add_parser("verify", parents=[common], help="run identity sweeps")
    p.add_argument("--window", type=int, default=4)
    p.add_argument("--checks", default="all", help=f"comma list from {','.join(CHECKS)} or 'all'")
    p.add_argument("--algebra", default="sl2", help="'sl2' or a structure-constant file")
    p.add_argument("--workers", type=int, default=1)
    return parser


# -- rendering -----------------------------------------------------------------


class _Out:
    def __init__(self, c_value):
        self.c_value = c_value

    def value(self, x: RatFuncC):
        if self.c_value is None:
            return x
        return RatFuncC.const(specialize_c(x, self.c_value))

    def text(self, x: RatFuncC) -> str:
        return format_ratfunc(self.value(x))

    def latex(self, x: RatFuncC) -> str:
        return format_latex(self.value(x))


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _latex(colspec: str, header, rows) -> str:
    lines = [rf"\begin{{tabular}}{{{colspec}}}", " & ".join(header) + r" \\", r"\hline"]
    lines += [" & ".join(r) + r" \\" for r in rows]
    lines.append(r"\end{tabular}")
    return "\n".join(lines) + "\n"


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _omega_cells(out: _Out, w: OmegaClass, latex: bool = False):
    return [out.latex(a) if latex else out.text(a) for a in w.coords]


# -- commands --------------------------------------------------------------------


def cmd_reduce(args) -> tuple[str, int]:
    curve = djkm_curve()
    f = parse_ring(args.expr, curve)
    if args.dexpr is None:
        form = DiffNormalForm(f, curve.zero())
        label = f"({args.expr})*dt"
    else:
        form = ring_d(parse_ring(args.dexpr, curve)).times(f)
        label = f"({args.expr})*d({args.dexpr})"
    w = reduce(form)
    out = _Out(args.c_value)
    if args.format == "json":
        return _json({"differential": label, **dict(zip(BASIS_KEYS, _omega_cells(out, w)))}), 0
    if args.format == "csv":
        return _csv(["differential", *BASIS_KEYS], [[label, *_omega_cells(out, w)]]), 0
    row = [rf"${_latex_diff(args.expr, args.dexpr)}$", *(f"${x}$" for x in _omega_cells(out, w, True))]
    return _latex("l" + "c" * 5, ["differential", *(f"${b}$" for b in LATEX_BASIS)], [row]), 0


def _latex_diff(expr: str, dexpr: str | None) -> str:
    body = expr.replace("*", "")
    body = re.sub(r"\^(-?\d+)", r"^{\1}", body)
    if dexpr is None:
        return rf"\overline{{{body}\,dt}}"
    d = re.sub(r"\^(-?\d+)", r"^{\1}", dexpr.replace("*", ""))
    return rf"\overline{{{body}\,d({d})}}"


def cmd_psi(args) -> tuple[str, int]:
    if args.smin > args.smax:
        raise UsageError("--smin must not exceed --smax")
    out = _Out(args.c_value)
    rows = [(s, psi(s).value) for s in range(args.smin, args.smax + 1)]
    if args.format == "json":
        data = {
            "metadata": PSI_READING,
            "rows": [{"s": s, **dict(zip(BASIS_KEYS, _omega_cells(out, w)))} for s, w in rows],
        }
        return _json(data), 0
    if args.format == "csv":
        return _csv(["s", *BASIS_KEYS], [[s, *_omega_cells(out, w)] for s, w in rows]), 0
    body = [[str(s), *(f"${x}$" for x in _omega_cells(out, w, True))] for s, w in rows]
    return _latex("r" + "c" * 5, ["$s$", *(f"${b}$" for b in LATEX_BASIS)], body), 0


def cmd_pfamily(args) -> tuple[str, int]:
    if args.kmax < -4:
        raise UsageError("--kmax must be at least -4")
    out = _Out(args.c_value)
    families = [args.family] if args.family is not None else sorted(FAMILIES)
    rows = [(f, k, v) for f in families for k, v in pfamily_recursion(f, args.kmax).rows()]
    return _table(args.format, ["family", "k", "P"], rows, out), 0


def cmd_gegenbauer(args) -> tuple[str, int]:
    if args.nmax < 0:
        raise UsageError("--nmax must be non-negative")
    out = _Out(args.c_value)
    table = gegenbauer(args.lam, args.nmax)
    rows = [(n, RatFuncC._poly(q)) for n, q in enumerate(table.entries)]
    return _table(args.format, ["n", "Q"], rows, out, meta={"lambda": str(args.lam)}), 0


def cmd_series(args) -> tuple[str, int]:
    N = args.N if args.N is not None else _default_truncation()
    if N < 1:
        raise UsageError("--N must be at least 1")
    out = _Out(args.c_value)
    series = pfamily_series(args.family, N)
    rows = [(args.family, k, series[k]) for k in range(N)]
    return _table(args.format, ["family", "degree", "coefficient"], rows, out, meta={"order": N}), 0


def _table(fmt, header, rows, out: _Out, meta=None) -> str:
    if fmt == "json":
        data = [dict(zip(header, (*r[:-1], out.text(r[-1])))) for r in rows]
        return _json({**(meta or {}), "rows": data}) if meta else _json(data)
    if fmt == "csv":
        return _csv(header, [[*r[:-1], out.text(r[-1])] for r in rows])
    body = [[*(str(x) for x in r[:-1]), f"${out.latex(r[-1])}$"] for r in rows]
    return _latex("r" * (len(header) - 1) + "l", header, body)


def cmd_verify(args) -> tuple[str, int]:
    if args.window < 0:
        raise UsageError("--window must be non-negative")
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    if not checks or any(c != "all" and c not in CHECKS for c in checks):
        raise UsageError(f"--checks must be 'all' or a comma list from {', '.join(CHECKS)}")
    if args.algebra == "sl2":
        L = build_sl2()
    else:
        path = Path(args.algebra)
        if not path.is_file():
            raise UsageError(f"no such algebra file: {args.algebra}")
        L = load_structure_constants(path)
    curve = djkm_curve(args.c_value)
    report = verify(args.window, L, checks, curve=curve, workers=max(1, args.workers))
    status = 0 if report.passed else 1
    if args.format == "json":
        return report.dumps() + "\n", status
    rows = [[c.name, c.cases, c.failures, c.firstCounterexample or ""] for c in report.checks]
    header = ["name", "cases", "failures", "firstCounterexample"]
    if args.format == "csv":
        return _csv(header, rows), status
    body = [[str(x) for x in r[:3]] + [_latex_escape(r[3])] for r in rows]
    return _latex("lrrl", header, body), status


def _latex_escape(text: str) -> str:
    return text.replace("⊗", r"$\otimes$").replace("^", r"\^{}").replace("_", r"\_")


COMMANDS = {
    "reduce": cmd_reduce,
    "psi": cmd_psi,
    "pfamily": cmd_pfamily,
    "gegenbauer": cmd_gegenbauer,
    "series": cmd_series,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.c_value is not None and args.c_value in (1, -1):
            raise UsageError(f"c = {args.c_value} is degenerate (c must avoid 1 and -1)")
        text, status = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"djkm: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, LieAlgebraError) as exc:
        print(f"djkm: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())

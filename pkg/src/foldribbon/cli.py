"""Command-line front end: ``foldribbon {build,analyze,optimize,table,crease,render}``.

Exit codes: 0 success, 2 flag or domain error, 3 clearance (constraint)
error, 4 numerical failure. Errors go to the error stream only; the
primary output is written once, after everything has been computed.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence, TextIO

from . import analysis, export
from .constructions import Family, build
from .errors import ConstraintError, NumericalError, RibbonError

EXIT_OK, EXIT_USAGE, EXIT_CONSTRAINT, EXIT_NUMERICAL = 0, 2, 3, 4

_FORMATS = {
    "build": ("doc",),
    "analyze": ("doc",),
    "optimize": ("doc",),
    "table": ("csv", "doc"),
    "crease": ("svg", "doc"),
    "render": ("svg",),
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def parse_angle(text: str) -> float:
    """Radians by default; a trailing ``deg`` marks degrees."""
    raw = text.strip().lower()
    try:
        if raw.endswith("deg"):
            return math.radians(float(raw[:-3]))
        return float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"must be a finite number > 0, got {text!r}")
    return v


def _add_diagram_flags(p: argparse.ArgumentParser, allow_input: bool) -> None:
    p.add_argument("--family", choices=[f.value.replace("_", "-") for f in Family])
    p.add_argument("--theta", type=parse_angle, help="fold angle, radians or e.g. 60deg")
    p.add_argument("--d", type=_positive_float, help="vertex spacing (exact mode if omitted)")
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int, help="odd q for the (2, q)-torus knot")
    p.add_argument("--k", type=int, help="escape accordion fold count (even)")
    if allow_input:
        p.add_argument("--input", metavar="DOC", help="read a diagram document instead")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="foldribbon", description="Folded ribbon knot constructions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
        p.add_argument("--format", choices=["doc", "csv", "svg"])
        return p

    _add_diagram_flags(common("build", "build a diagram and emit its document"), False)
    _add_diagram_flags(common("analyze", "ribbonlength report for a diagram"), True)
    p = common("optimize", "optimal Moebius fold angle")
    p.add_argument("--tol", type=_positive_float, default=1e-9)
    p = common("table", "construction bound vs 2.5 Cr + 1 for (2, q)-torus knots")
    p.add_argument("--q-min", type=int, default=3)
    p.add_argument("--q-max", type=int, default=1001)
    p = common("crease", "crease pattern of a diagram")
    _add_diagram_flags(p, True)
    p.add_argument("--no-labels", action="store_true")
    p = common("render", "SVG drawing of a diagram")
    _add_diagram_flags(p, True)
    p.add_argument("--no-labels", action="store_true")
    p.add_argument("--layer-offset", type=float, default=0.03)
    return parser


def _diagram(args):
    if getattr(args, "input", None):
        if args.family is not None:
            raise _UsageError("--input and --family are mutually exclusive")
        with open(args.input, encoding="utf-8") as fh:
            return export.from_document(fh.read()).diagram
    if args.family is None:
        raise _UsageError("--family is required (or --input)")
    return build(args.family, theta=args.theta, d=args.d, n=args.n, q=args.q, k=args.k)


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, allow_nan=False) + "\n"


def _analyze_text(diagram) -> str:
    rep = analysis.analyze(diagram)
    p = rep.params
    return _json({
        "schema_version": export.SCHEMA_VERSION,
        "params": {"family": p.family.value, "theta": p.theta, "d": p.d, "n": p.n, "k": p.k},
        "formula_value": rep.formula_value,
        "oracle_value": rep.oracle_value,
        "discrepancy": rep.discrepancy,
        "limit_d_zero": rep.limit_d_zero,
        "ledger": [{"name": t.name, "length": t.length, "multiplicity": t.multiplicity,
                    "total": t.total} for t in rep.ledger],
        "ledger_total": rep.ledger_total,
        "band_type": analysis.band_type(diagram).value,
        "linking_number": analysis.ribbon_linking_number(diagram),
        "linking_sign_convention": "each half-wrap counts +1",
        "fold_count": diagram.fold_count,
    })


def _crease_doc(pattern: export.CreasePattern) -> str:
    return _json({
        "schema_version": export.SCHEMA_VERSION,
        "strip_length": pattern.strip_length,
        "origin": pattern.origin,
        "creases": [{"position": c.position, "angle": c.angle, "parity": c.parity.value}
                    for c in pattern.creases],
    })


def _execute(args) -> str:
    fmt = args.format or _FORMATS[args.command][0]
    if fmt not in _FORMATS[args.command]:
        raise _UsageError(f"{args.command} does not support --format {fmt}")
    cmd = args.command
    if cmd == "build":
        return export.to_document(_diagram(args))
    if cmd == "analyze":
        return _analyze_text(_diagram(args))
    if cmd == "optimize":
        opt = analysis.optimal_theta(args.tol)
        return _json({"theta": opt.theta, "value": opt.value, "iterations": opt.iterations,
                      "cross_check_theta": opt.cross_check_theta,
                      "cross_check_iterations": opt.cross_check_iterations,
                      "tolerance": args.tol})
    if cmd == "table":
        if args.q_max < args.q_min:
            raise _UsageError("--q-max must be >= --q-min")
        first = args.q_min if args.q_min % 2 else args.q_min + 1
        rows = analysis.comparison_table(range(first, args.q_max + 1, 2))
        if fmt == "csv":
            return export.table_csv(rows)
        return _json([{"q": r.q, "crossing_number": r.crossing_number,
                       "construction_bound": r.construction_bound,
                       "kny_bound": r.kny_bound} for r in rows])
    if cmd == "crease":
        pattern = export.crease_pattern(_diagram(args))
        if fmt == "doc":
            return _crease_doc(pattern)
        return export.render_crease(pattern, export.RenderOptions(labels=not args.no_labels))
    if cmd == "render":
        if not (math.isfinite(args.layer_offset) and args.layer_offset >= 0):
            raise _UsageError("--layer-offset must be a finite number >= 0")
        opts = export.RenderOptions(labels=not args.no_labels, layer_offset=args.layer_offset)
        return export.render_diagram(_diagram(args), opts)
    raise _UsageError(f"unknown command {cmd!r}")


def run(argv: Sequence[str], out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Run one invocation; returns the exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = make_parser()
    try:
        args = parser.parse_args(list(argv))
        text = _execute(args)
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            out.write(text)
    except _UsageError as exc:
        err.write(f"foldribbon: error: {exc}\n")
        return EXIT_USAGE
    except ConstraintError as exc:
        err.write(f"foldribbon: constraint violated: {exc}\n")
        return EXIT_CONSTRAINT
    except NumericalError as exc:
        err.write(f"foldribbon: numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except (RibbonError, OSError) as exc:
        err.write(f"foldribbon: error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

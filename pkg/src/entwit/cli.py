"""Command-line front end: ``entwit {analyze,scan,reproduce,export}``.

Exit codes: 0 success, 2 parse/validation failure, 3 dimension mismatch,
4 unknown family or bad range.
"""

import argparse
import csv
import io
import json
import os
import sys

from . import analysis, criteria, statezoo
from .errors import (
    BadParameter, BadRange, DimensionMismatch, NotAState, ParseError, UnknownFamily,
)
from .linalg import DEFAULT_TOL
from .posmap import MapParams
from .statefile import load_state, save_state

EXIT_OK, EXIT_INVALID, EXIT_DIMENSION, EXIT_FAMILY = 0, 2, 3, 4
PARAM_FLAGS = ("t1", "t2", "t3", "p", "q", "z", "r", "lambda")


def default_tol():
    env = os.environ.get("ENTWIT_TOL")
    return float(env) if env else DEFAULT_TOL


def _fmt(x):
    return "n/a" if x is None else f"{x:.6g}"


def _ct_grid(args):
    if args.ct_grid is None:
        return criteria.DEFAULT_CT_GRID
    try:
        vals = [float(v) for v in args.ct_grid.split(",") if v.strip()]
    except ValueError:
        raise BadRange(f"cannot parse --ct-grid {args.ct_grid!r}") from None
    if args.ct_cross:
        return [(x, y) for x in vals for y in vals]
    return [(v, v) for v in vals]


def _family_values(args, fam_name, allow_ranges):
    fam = statezoo.family(fam_name)
    fixed, ranges = {}, {}
    for name in PARAM_FLAGS:
        raw = getattr(args, "lam" if name == "lambda" else name)
        if raw is None:
            continue
        if name not in fam.params:
            raise BadParameter(f"family {fam_name!r} does not take --{name}")
        if name in fam.complex_params:
            try:
                fixed[name] = complex(raw.replace(" ", ""))
            except ValueError:
                raise BadParameter(f"--{name} must be a complex number, got {raw!r}") from None
            continue
        vals = analysis.parse_range(raw)
        if ":" in raw:
            if not allow_ranges:
                raise BadRange(f"--{name} takes a single value here, got range {raw!r}")
            ranges[name] = vals
        else:
            fixed[name] = vals[0]
    return fixed, ranges


def _criterion_line(label, r):
    status = "detected" if r.detected else "undetected"
    extra = f"  (x, y) = {r.params}" if r.params else ""
    return f"{label:<10} value {_fmt(r.value):>12}  threshold {_fmt(r.threshold):>10}  {status}{extra}"


def render_report(rep):
    lines = [
        _criterion_line("PPT", rep.ppt),
        _criterion_line("CCNR", rep.ccnr),
        _criterion_line("dV", rep.dv),
        _criterion_line("CT-scan", rep.ct),
    ]
    if rep.witness_value is None:
        lines.append("witness    n/a (W acts on 16-dimensional states)")
    else:
        note = " (from gamma_for_state)" if rep.gamma_source == "gamma_for_state" else " (explicit)"
        lines.append(f"witness    Tr[W rho] {_fmt(rep.witness_value):>12}  gamma {_fmt(rep.gamma)}{note}  "
                     f"{rep.witness_verdict}")
    lines.append(f"verdict    {rep.verdict}")
    return "\n".join(lines)


def cmd_analyze(args, out):
    s = load_state(args.state, args.tol)
    p = MapParams(args.alpha, args.beta, allow_zero=True)
    rep = analysis.analyze_state(s, p, args.gamma, _ct_grid(args), args.tol)
    if args.out == "json":
        out.write(json.dumps(rep.to_dict(), indent=2) + "\n")
    else:
        out.write(render_report(rep) + "\n")
    return EXIT_OK


def render_scan_table(report):
    header = ["param", "ppt_min_eig", "ccnr", "dv", "ct_margin", "witness", "gamma", "verdict"]
    if report.with_positivity:
        header += ["positivity", "ratio"]
    rows = []
    for r in report.rows:
        row = [";".join(f"{k}={v:g}" if isinstance(v, float) else f"{k}={v}" for k, v in r.point.items()),
               _fmt(r.ppt.value), _fmt(r.ccnr.value), _fmt(r.dv.value), _fmt(r.ct.margin),
               _fmt(r.witness_value), _fmt(r.gamma), r.verdict]
        if report.with_positivity:
            pv = r.positivity
            row += ["n/a" if pv is None else pv.kind.value,
                    "n/a" if pv is None else _fmt(pv.ratio_bound)]
        rows.append(row)
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    return "\n".join([fmt.format(*header)] + [fmt.format(*r) for r in rows])


def render_scan_csv(report):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = list(analysis.CSV_COLUMNS)
    if report.with_positivity:
        cols += analysis.POSITIVITY_COLUMNS
    w.writerow(cols)
    for r in report.rows:
        w.writerow(r.csv_fields(report.with_positivity))
    return buf.getvalue()


def cmd_scan(args, out):
    fixed, ranges = _family_values(args, args.family, allow_ranges=True)
    spec = statezoo.FamilySpec(args.family, fixed, ranges)
    p = MapParams(args.alpha, args.beta, allow_zero=True)
    report = analysis.scan_family(spec, p, args.gamma, _ct_grid(args), args.workers, args.tol)
    if args.out == "csv":
        out.write(render_scan_csv(report))
    elif args.out == "json":
        out.write(json.dumps(report.to_dict(), indent=2, default=str) + "\n")
    else:
        out.write(render_scan_table(report) + "\n")
    return EXIT_OK


def cmd_reproduce(args, out):
    p = MapParams(args.alpha, args.beta, allow_zero=True)
    if args.table == "choi_spectrum":
        cmp = analysis.choi_spectrum_comparison(p)
        if args.out == "json":
            out.write(json.dumps(cmp, indent=2) + "\n")
        else:
            out.write(f"Choi spectrum, alpha = {p.alpha:g}, beta = {p.beta:g}\n")
            out.write("  computed:    " + ", ".join(_fmt(v) for v in cmp["computed"]) + "\n")
            out.write("  closed form: " + ", ".join(_fmt(v) for v in cmp["closed_form"]) + "\n")
            out.write(f"  max |difference| = {cmp['max_abs_diff']:.6g}\n")
        return EXIT_OK
    table = analysis.reproduce_table1(p) if args.table == "table1" else analysis.reproduce_table2(p)
    if args.out == "json":
        out.write(json.dumps(table.to_dict(), indent=2) + "\n")
    else:
        out.write("\n".join(table.lines()) + "\n")
    return EXIT_OK


def cmd_export(args, out):
    fixed, _ = _family_values(args, args.family, allow_ranges=False)
    s = statezoo.FamilySpec(args.family, fixed).build()
    save_state(s, args.out_path)
    out.write(f"wrote {args.family} state ({s.dA}x{s.dB}) to {args.out_path}\n")
    return EXIT_OK


def _add_family_flags(sp):
    sp.add_argument("--family", required=True, help=", ".join(statezoo.FAMILIES))
    for name in PARAM_FLAGS:
        dest = "lam" if name == "lambda" else name
        sp.add_argument(f"--{name}", dest=dest, metavar="V", help="value or start:stop:step")


def _add_map_flags(sp, with_gamma=True):
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--beta", type=float, default=1.0)
    if with_gamma:
        sp.add_argument("--gamma", type=float, default=None,
                        help="witness shift; gamma_for_state when omitted")


def build_parser():
    ap = argparse.ArgumentParser(prog="entwit", description=__doc__.splitlines()[0])
    ap.add_argument("--tol", type=float, default=None, help="tolerance (default 1e-9 or $ENTWIT_TOL)")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("analyze", help="report every criterion for a state file")
    sp.add_argument("state")
    _add_map_flags(sp)
    sp.add_argument("--out", choices=("table", "json"), default="table")
    sp.add_argument("--ct-grid", default=None, help="comma list of x=y values")
    sp.add_argument("--ct-cross", action="store_true", help="use the full x,y cross product of --ct-grid")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("scan", help="evaluate criteria over a parameter grid")
    _add_family_flags(sp)
    _add_map_flags(sp)
    sp.add_argument("--out", choices=("table", "csv", "json"), default="table")
    sp.add_argument("--ct-grid", default=None)
    sp.add_argument("--ct-cross", action="store_true")
    sp.add_argument("--workers", type=int, default=None)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("reproduce", help="regenerate a detection table or the Choi spectrum")
    sp.add_argument("table", choices=("table1", "table2", "choi_spectrum"))
    _add_map_flags(sp, with_gamma=False)
    sp.add_argument("--out", choices=("table", "json"), default="table")
    sp.set_defaults(func=cmd_reproduce)

    sp = sub.add_parser("export", help="write a family member as a JSON state file")
    _add_family_flags(sp)
    sp.add_argument("out_path")
    sp.set_defaults(func=cmd_export)
    return ap


def _join_negative_values(argv):
    """``--t3 -0.9:0:0.1`` -> ``--t3=-0.9:0:0.1`` so argparse does not read an option."""
    flags = {f"--{n}" for n in PARAM_FLAGS} | {"--alpha", "--beta", "--gamma", "--tol"}
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if a in flags and len(nxt) > 1 and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] == "."):
            out.append(f"{a}={nxt}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_negative_values(argv))
    if args.tol is None:
        args.tol = default_tol()
    try:
        return args.func(args, out)
    except DimensionMismatch as exc:
        print(f"entwit: dimension mismatch: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (UnknownFamily, BadRange) as exc:
        print(f"entwit: {exc}", file=sys.stderr)
        return EXIT_FAMILY
    except (ParseError, NotAState, BadParameter, ValueError, OSError) as exc:
        print(f"entwit: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``miyawaki tables|verify|norms|theta|diag``."""

from __future__ import annotations

import argparse
import json
import sys

import mpmath

from miyawaki import report
from miyawaki.holproj import Method

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="miyawaki", description="Critical values of L(s, F12, St): exact tables, checks and diagnostics.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("tables", help="print a results table")
    t.add_argument("name", choices=report.TABLE_NAMES)
    t.add_argument("--format", choices=sorted(report.RENDERERS), default="text")
    t.add_argument("--method", choices=[m.value for m in Method], default=None,
                   help="projection rule (default: published for coeffs-*, corrected otherwise)")
    t.add_argument("--no-numeric", action="store_true", help="skip the numerical column")

    v = sub.add_parser("verify", help="compare computed values with the printed tables")
    g = v.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true", help="every table except theta")
    g.add_argument("--table", choices=report.VERIFY_TABLES)
    v.add_argument("--tolerance", type=float, default=1e-6, help="relative tolerance for numeric columns")
    v.add_argument("--method", choices=[m.value for m in Method], default=None)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--threads", type=int, default=None)
    v.add_argument("--timings", action="store_true", help="include runtimes (output no longer reproducible)")

    n = sub.add_parser("norms", help="Petersson norms from Rankin's formula")
    n.add_argument("--form", choices=("delta", "g20"), default=None)
    n.add_argument("--l", type=int, default=None, dest="l")
    n.add_argument("--digits", type=int, default=30)

    th = sub.add_parser("theta", help="Fourier coefficient of F12 at a Gram class")
    th.add_argument("--gram", required=True, help='"a,b,c;b,d,e;c,e,f"')
    th.add_argument("--mode", choices=("doubled", "half"), default="doubled",
                    help="doubled: entries of 2N = (<v_i,v_j>); half: entries of N")
    th.add_argument("--threads", type=int, default=None)
    th.add_argument("--budget", type=float, default=None, help="abort after this many seconds")
    th.add_argument("--raw", action="store_true", help="print the unnormalized sum")

    d = sub.add_parser("diag", help="diagnostics")
    d.add_argument("which", choices=("fe",))
    d.add_argument("--source", choices=("printed", "published", "corrected", "all"), default="all")
    d.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _cmd_tables(args) -> int:
    table = report.build_table(args.name, args.method, with_numeric=not args.no_numeric)
    sys.stdout.write(report.RENDERERS[args.format](table))
    return EXIT_OK


def _cmd_verify(args) -> int:
    names = report.VERIFY_ALL if args.all or not args.table else (args.table,)
    method = Method.parse(args.method) if args.method else None
    watch = report.Stopwatch()
    diags = []
    for name in names:
        diags.extend(watch.run(name, report.run_verification, name, method, args.tolerance, args.threads))
    ok = all(d.verdict for d in diags)
    if args.format == "json":
        doc = report.ReportDocument(
            diagnostics=[d.as_dict() for d in diags],
            metadata=report.metadata(watch.times if args.timings else None),
        )
        sys.stdout.write(doc.to_json())
    else:
        for d in diags:
            mark = "PASS" if d.verdict else "FAIL"
            line = f"{mark} {d.name}"
            if not d.verdict:
                line += f": expected {d.expected}, got {d.actual}"
            print(line)
        print(f"{sum(d.verdict for d in diags)}/{len(diags)} checks passed")
        if args.timings:
            for k, t in watch.times.items():
                print(f"time {k}: {t} s")
    return EXIT_OK if ok else EXIT_MISMATCH


def _cmd_norms(args) -> int:
    from miyawaki.numeric import peterson_norm

    pairs = []
    if args.form in (None, "delta"):
        pairs += [(12, l) for l in ([args.l] if args.l and args.form == "delta" else [8])]
    if args.form in (None, "g20"):
        pairs += [(20, l) for l in ([args.l] if args.l and args.form == "g20" else [12, 14, 16])]
    for k, l in pairs:
        try:
            v = peterson_norm(k, l, dps=max(args.digits + 5, 20))
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        name = "Delta" if k == 12 else "g20"
        print(f"<{name},{name}> (l={l}) = {mpmath.nstr(v.value, args.digits)}  +- {mpmath.nstr(v.error_bound, 3)}")
    return EXIT_OK


def _cmd_theta(args) -> int:
    from miyawaki import theta

    try:
        target = theta.parse_gram(args.gram, args.mode)
        res = theta.fourier_coefficient(target, args.threads, args.budget)
    except theta.GramFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (theta.BudgetExceeded, theta.NormCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    if args.raw:
        print(res.raw)
    else:
        print(res.raw / theta._minimal_raw())
    return EXIT_OK


def _cmd_diag(args) -> int:
    sources = ("printed", "published", "corrected") if args.source == "all" else (args.source,)
    doc = report.fe_document(sources)
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(report.render_fe_text(doc))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "tables": _cmd_tables,
        "verify": _cmd_verify,
        "norms": _cmd_norms,
        "theta": _cmd_theta,
        "diag": _cmd_diag,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands::

    twobytwo analyze  (--counts a,b,c,d | --probs p,q,r,s | --csv PATH --col-a SEL --col-b SEL)
    twobytwo verify   --nmax N
    twobytwo family   --alpha A --beta B [--grid K]
    twobytwo simulate (--counts ... | --probs ...) [--samples N] [--seed S]

Exit codes: 0 consistent / pass, 1 usage or input error, 2 verified
inconsistency or failed check.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import family as fam
from . import measures, montecarlo, oracle
from .errors import EmptyFile, IngestError, Indeterminate, MalformedRow, MissingColumn, TableError
from .table import (
    DEFAULT_ZERO_BAND,
    CountTable,
    MarginalPair,
    ProbTable,
    SignPolicy,
    as_exact,
    from_counts,
    from_probs,
)

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# ingestion


@dataclass(frozen=True)
class IngestSpec:
    path: str
    column_a: Union[int, str]
    column_b: Union[int, str]
    has_header: bool = False
    delimiter: str = ","


def _resolve(selector, header: Optional[list[str]], width: Optional[int]) -> int:
    if isinstance(selector, int) or (isinstance(selector, str) and selector.isdigit()):
        return int(selector)
    if header is None:
        raise MissingColumn(f"column {selector!r} given by name but the file has no header")
    if selector not in header:
        raise MissingColumn(f"no column named {selector!r} in header {header}")
    return header.index(selector)


def ingest(spec: IngestSpec) -> CountTable:
    """Count the four (a, b) combinations over the rows of a binary file."""
    if len(spec.delimiter) != 1:
        raise IngestError("delimiter must be a single character")
    with open(spec.path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter=spec.delimiter, quoting=csv.QUOTE_NONE)
        header = None
        if spec.has_header:
            header = next(reader, None)
            if header is None:
                raise EmptyFile(f"{spec.path} is empty")
        ia = _resolve(spec.column_a, header, None)
        ib = _resolve(spec.column_b, header, None)
        if ia == ib:
            raise IngestError("column selectors resolve to the same column")
        if header is not None and max(ia, ib) >= len(header):
            raise MissingColumn(f"column index {max(ia, ib)} beyond header width {len(header)}")
        n = {(1, 1): 0, (1, 0): 0, (0, 1): 0, (0, 0): 0}
        for row in reader:
            if not row:
                continue
            line = reader.line_num
            if max(ia, ib) >= len(row):
                raise MalformedRow(line, spec.delimiter.join(row))
            a, b = row[ia], row[ib]
            for tok in (a, b):
                if tok not in ("0", "1"):
                    raise MalformedRow(line, tok)
            n[int(a), int(b)] += 1
    if sum(n.values()) == 0:
        raise EmptyFile(f"{spec.path} has no data rows")
    return CountTable(n[1, 1], n[1, 0], n[0, 1], n[0, 0])


# --------------------------------------------------------------------------
# rendering


def render_value(v, exact: bool = True):
    """JSON-ready value: "n/d" for fractions, 17 significant digits for floats."""
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        if not exact:
            return render_value(float(v), exact)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    v = float(v)
    if math.isinf(v):
        return "+inf" if v > 0 else "-inf"
    return format(v, ".17g")


def report_to_dict(report: measures.MeasureReport) -> dict:
    exact = report.policy.is_exact
    t = report.table
    return {
        "mode": report.policy.mode,
        "zero_band": None if exact else report.policy.zero_band,
        "table": {k: render_value(v, exact) for k, v in zip("pqrs", t.cells)},
        "delta_sign": report.delta_sign.label,
        "measures": {
            name: {
                "value": render_value(e.value, exact),
                "sign": e.sign.label,
                "perspective": e.perspective,
                "in_verdict": bool(e.orientation),
            }
            for name, e in report.entries.items()
        },
        "omitted": dict(report.omitted),
        "details": {k: render_value(v, exact) for k, v in report.details.items()},
        "verdict": report.verdict,
        "dissenting": list(report.dissenting),
    }


def report_to_json(report: measures.MeasureReport) -> str:
    return json.dumps(report_to_dict(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def report_to_csv(report: measures.MeasureReport) -> str:
    exact = report.policy.is_exact
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["measure", "value", "sign", "perspective"])
    for name in sorted(report.entries):
        e = report.entries[name]
        w.writerow([name, render_value(e.value, exact), e.sign.label, e.perspective])
    for name in sorted(report.omitted):
        w.writerow([name, "", "omitted", report.omitted[name]])
    w.writerow(["verdict", report.verdict, report.delta_sign.label, ";".join(report.dissenting)])
    return buf.getvalue()


# --------------------------------------------------------------------------
# argument handling


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _split(text: str, what: str) -> list[str]:
    parts = [x.strip() for x in text.split(",")]
    if len(parts) != 4 or not all(parts):
        raise UsageError(f"expected four cell {what}, got {text!r}")
    return parts


def _policy(args, default_mode: str) -> SignPolicy:
    mode = args.mode or default_mode
    if mode == "exact":
        return SignPolicy.exact()
    return SignPolicy.floating(args.zero_band)


def _input_table(args) -> tuple[ProbTable, SignPolicy]:
    if args.counts is not None:
        try:
            counts = [int(x) for x in _split(args.counts, "counts")]
        except ValueError:
            raise UsageError(f"counts must be integers, got {args.counts!r}")
        c = CountTable(*counts)
        policy = _policy(args, "exact")
    elif args.probs is not None:
        parts = _split(args.probs, "probabilities")
        policy = _policy(args, "float")
        try:
            vals = [as_exact(x) for x in parts] if policy.is_exact else [float(x) for x in parts]
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"cannot parse probabilities {args.probs!r}")
        t = from_probs(*vals, policy=policy)
        return t, policy
    elif getattr(args, "csv", None) is not None:
        if args.col_a is None or args.col_b is None:
            raise UsageError("--csv needs --col-a and --col-b")
        spec = IngestSpec(args.csv, args.col_a, args.col_b, args.header, args.delim)
        c = ingest(spec)
        policy = _policy(args, "exact")
    else:
        raise UsageError("give one of --counts, --probs or --csv")
    t = from_counts(c)
    if not policy.is_exact:
        t = t.to_float()
    return t, policy


def _add_table_input(p: argparse.ArgumentParser, with_csv: bool):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--counts", metavar="a,b,c,d", help="cell counts n_p,n_q,n_r,n_s")
    g.add_argument("--probs", metavar="p,q,r,s", help="cell probabilities")
    if with_csv:
        g.add_argument("--csv", metavar="PATH", help="delimited file of paired 0/1 observations")
        p.add_argument("--col-a", metavar="SEL", help="column of A (0-based index or header name)")
        p.add_argument("--col-b", metavar="SEL", help="column of B")
        p.add_argument("--header", action="store_true", help="first row is a header")
        p.add_argument("--delim", default=",", help="single-character delimiter")
    p.add_argument("--mode", choices=("exact", "float"),
                   help="arithmetic mode (default: exact for counts, float for probabilities)")
    p.add_argument("--zero-band", type=float, default=DEFAULT_ZERO_BAND, metavar="EPS",
                   help="float-mode band treated as zero")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twobytwo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="full measure report for one table")
    _add_table_input(p, with_csv=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("verify", help="exhaustive sign check over small integer tables")
    p.add_argument("--nmax", type=int, default=12, metavar="N")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("family", help="sweep the fixed-marginal coupling family")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--grid", type=int, default=101, metavar="K")
    p.add_argument("--mode", choices=("exact", "float"), default="float")

    p = sub.add_parser("simulate", help="Monte Carlo cross-check against closed forms")
    _add_table_input(p, with_csv=False)
    p.add_argument("--samples", type=int, default=10**6, metavar="N")
    p.add_argument("--seed", type=int, default=42, metavar="S")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


# --------------------------------------------------------------------------
# commands


def cmd_analyze(args, out) -> int:
    t, policy = _input_table(args)
    report = measures.full_report(t, policy)
    out.write(report_to_json(report) if args.format == "json" else report_to_csv(report))
    return EXIT_OK if report.consistent else EXIT_INCONSISTENT


def cmd_verify(args, out) -> int:
    if args.nmax < 4:
        raise UsageError("--nmax must be at least 4")
    summary = oracle.exhaustive_sign_check(args.nmax, workers=args.workers)
    if args.format == "json":
        out.write(json.dumps(summary.to_dict(), sort_keys=True, indent=2) + "\n")
    else:
        out.write(f"tables: {summary.tables_checked}, failures: {len(summary.failures)}\n")
        for f in summary.failures:
            out.write(f"  {f['counts']}: {'; '.join(f['problems'])}\n")
    return EXIT_OK if summary.ok else EXIT_INCONSISTENT


FAMILY_COLUMNS = ("t", "p", "q", "r", "s", "F", "G", "phi", "theta", "OR", "omitted")


def family_rows(alpha, beta, grid: int):
    """Raw rows of the family sweep; values exact when the marginals are."""
    f = fam.make_family(MarginalPair(alpha, beta))
    for t in f.grid(grid):
        table = fam.table_from_t(f, t)
        row = {"t": t, "p": table.p, "q": table.q, "r": table.r, "s": table.s,
               "F": fam.F_of_t(f, t), "G": fam.G_of_t(f, t),
               "phi": measures.phi(table), "theta": measures.theta(table)}
        omitted = []
        try:
            row["OR"] = measures.odds_ratio(table)
        except Indeterminate:
            row["OR"] = None
            omitted.append("OR")
        row["omitted"] = ";".join(omitted)
        yield row


def cmd_family(args, out) -> int:
    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    try:
        alpha, beta = as_exact(args.alpha), as_exact(args.beta)
    except (ValueError, ZeroDivisionError):
        raise UsageError("alpha and beta must be numbers")
    exact = args.mode == "exact"
    w = csv.writer(out, lineterminator="\n")
    w.writerow(FAMILY_COLUMNS)
    for row in family_rows(alpha, beta, args.grid):
        w.writerow([row["omitted"] if k == "omitted" else
                    ("" if row[k] is None else render_value(row[k], exact))
                    for k in FAMILY_COLUMNS])
    return EXIT_OK


def cmd_simulate(args, out) -> int:
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    t, _ = _input_table(args)
    rows = montecarlo.cross_check(t, args.samples, args.seed, workers=args.workers)
    if args.format == "json":
        payload = {
            "samples": args.samples, "seed": args.seed,
            "rows": {r.name: {"estimate": r.estimate.estimate, "std_error": r.estimate.std_error,
                              "closed_form": r.closed_form, "band": r.band,
                              "pass": r.passed} for r in rows},
        }
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        out.write(f"samples: {args.samples}, seed: {args.seed}\n")
        for r in rows:
            out.write(f"{r.name:<12} estimate={r.estimate.estimate:.6g} closed={r.closed_form:.6g} "
                      f"band=+/-{r.band:.3g} {'PASS' if r.passed else 'FAIL'}\n")
    return EXIT_OK if all(r.passed for r in rows) else EXIT_INCONSISTENT


COMMANDS = {"analyze": cmd_analyze, "verify": cmd_verify,
            "family": cmd_family, "simulate": cmd_simulate}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, TableError, IngestError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success or match, 1 verification mismatch, 2 usage or domain
error, 3 resource or journal I/O error.  Settings are taken from flags, then
from ``QS_*`` environment variables, then from built-in defaults.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from pathlib import Path

from . import theorems
from .arith import factor
from .classgroup import class_group_structure, class_number_real, narrow_class_number, order_of_prime_form
from .errors import ConfigurationError, DomainError, JournalError, ResourceError
from .forms import as_discriminant, reduced_forms_real
from .kernel import PROFILES, SHAPES, DFilter, custom_profile
from .profile import FRVariant, OmegaQuery, fr_check, fr_quotients, omega_profile
from .scan import ScanJob, env_int, resume_scan, scan, shared_table
from .units import fundamental_unit

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
RECORD_FIELDS = ("d", "max_omega", "witness_x", "pass")


def _env(name: str, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    if isinstance(default, int):
        value = env_int(name)
        return default if value is None else value
    return raw


class UsageError(Exception):
    pass


# -- output ------------------------------------------------------------------


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def emit_rows(rows: list[dict], fmt: str, out=None, columns=None):
    out = out or sys.stdout
    columns = list(columns or (rows[0].keys() if rows else ()))
    if fmt == "jsonl":
        for r in rows:
            out.write(json.dumps(r) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow(["" if r[c] is None else str(r[c]).lower() if isinstance(r[c], bool) else r[c] for c in columns])
    else:
        table = [[_cell(r[c]) for c in columns] for r in rows]
        widths = [max([len(c)] + [len(row[i]) for row in table]) for i, c in enumerate(columns)]
        out.write("  ".join(c.rjust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
        for row in table:
            out.write("  ".join(v.rjust(w) for v, w in zip(row, widths)).rstrip() + "\n")


def emit_stream(records, fmt: str, out=None) -> int:
    """Stream scan records; the table format is written row by row too."""
    out = out or sys.stdout
    n = 0
    writer = csv.writer(out, lineterminator="\n") if fmt == "csv" else None
    if writer:
        writer.writerow(RECORD_FIELDS)
    elif fmt == "table":
        out.write(f"{'d':>10}  {'max_omega':>9}  {'witness_x':>9}  pass\n")
    for r in records:
        n += 1
        row = r.to_json()
        if fmt == "jsonl":
            out.write(json.dumps(row) + "\n")
        elif writer:
            writer.writerow([row["d"], row["max_omega"], "" if row["witness_x"] is None else row["witness_x"], "true" if row["pass"] else "false"])
        else:
            out.write(f"{row['d']:>10}  {row['max_omega']:>9}  {_cell(row['witness_x']):>9}  {_cell(row['pass'])}\n")
        out.flush()
    return n


# -- argument parsing ----------------------------------------------------------


def _parse_filter(items: list[str]) -> DFilter:
    residues, shapes, min_d = [], [], 1
    for item in items:
        if item.startswith("theorem:"):
            f = theorems.lookup(item.split(":", 1)[1]).d_filter
            residues.extend(f.residues)
            shapes.extend(f.shapes)
            min_d = max(min_d, f.min_d)
        elif item.startswith("mod"):
            try:
                m, rs = item[3:].split("=")
                residues.append((int(m), tuple(int(r) for r in rs.split(","))))
            except ValueError:
                raise UsageError(f"bad residue filter {item!r}; expected e.g. mod8=1,3,5") from None
        elif item.startswith("min="):
            min_d = int(item[4:])
        elif item in SHAPES:
            shapes.append(item)
        else:
            raise UsageError(f"unknown filter {item!r}")
    return DFilter(tuple(residues), tuple(shapes), min_d)


def build_parser() -> argparse.ArgumentParser:
    fmt = _env("QS_FORMAT", "table")
    workers = _env("QS_WORKERS", 1)
    sieve = _env("QS_SIEVE_LIMIT", 0)
    chunk = _env("QS_CHUNK_SIZE", 10_000)

    p = argparse.ArgumentParser(
        prog="omegaquad",
        description="Omega profiles of d + x^2, quadratic class groups and bounded theorem searches.",
        epilog="Environment: QS_WORKERS (0 = all cores), QS_SIEVE_LIMIT, QS_CHUNK_SIZE, QS_FORMAT. Flags win over environment.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text, formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        return sp

    def add_format(sp):
        sp.add_argument("--format", choices=("table", "csv", "jsonl"), default=fmt, help="output format (QS_FORMAT)")

    sp = add("omega", "max of omega(d +/- x^2) over a range of x")
    sp.add_argument("d", type=int)
    sp.add_argument("--parity", choices=("odd", "even", "all"), default="odd")
    sp.add_argument("--sign", choices=("plus", "minus"), default="plus")
    sp.add_argument("--xmin", type=int, default=None, help="smallest x (default: 1 for odd, 2 for even, 0 for all)")
    add_format(sp)

    sp = add("classgroup", "class group of an imaginary discriminant by reduced forms")
    sp.add_argument("D", type=int, help="negative discriminant")
    sp.add_argument("--prime", type=int, action="append", default=[], help="also report the order of the prime form above this prime")
    add_format(sp)

    sp = add("realclass", "class number of a real quadratic field by cycles of reduced forms")
    sp.add_argument("D", type=int, help="positive fundamental discriminant")
    sp.add_argument("--forms", action="store_true", help="list the reduced forms")
    add_format(sp)

    sp = add("unit", "fundamental unit of Q(sqrt d)")
    sp.add_argument("d", type=int)
    add_format(sp)

    sp = add("fr", "Frobenius-Rabinowitsch type primality check")
    sp.add_argument("d", type=int)
    sp.add_argument("--variant", choices=("imag-odd", "imag-even", "real"), required=True)
    sp.add_argument("--show", action="store_true", help="list every quotient")
    add_format(sp)

    sp = add("verify", "recompute a theorem or conjecture list by exhaustive search")
    sp.add_argument("id", help="theorem id, see list-theorems")
    sp.add_argument("--bound", type=int, default=None, help="search bound (default: the theorem's own)")
    sp.add_argument("--workers", type=int, default=workers, help="worker threads (QS_WORKERS, 0 = all cores)")
    sp.add_argument("--sieve-limit", type=int, default=sieve, help="sieve size override (QS_SIEVE_LIMIT, 0 = automatic)")
    sp.add_argument("--values", action="store_true", help="print every computed value, one per line")
    sp.add_argument("--implications", action="store_true", help="also check the class-group consequences")
    add_format(sp)

    sp = add("implications", "check the class-group consequences over a listed set of d")
    sp.add_argument("id", help=f"one of {', '.join(theorems.IMPLICATIONS)}")
    add_format(sp)

    sp = add("scan", "free-form range scan with optional journal")
    sp.add_argument("--lo", type=int, default=1)
    sp.add_argument("--hi", type=int, default=None)
    sp.add_argument("--profile", default="m_odd", help=f"one of {', '.join(sorted(PROFILES))}, or custom")
    sp.add_argument("--parity", choices=("odd", "even", "all"), default="odd", help="custom profile only")
    sp.add_argument("--sign", choices=("plus", "minus"), default="plus", help="custom profile only")
    sp.add_argument("--xmin", type=int, default=1, help="custom profile only")
    sp.add_argument("--threshold", type=int, default=2)
    sp.add_argument(
        "--filter",
        action="append",
        default=[],
        metavar="F",
        help="repeatable: a shape (" + ", ".join(SHAPES) + "), modM=r1,r2, min=N, or theorem:ID",
    )
    sp.add_argument("--chunk-size", type=int, default=chunk, help="d values per chunk (QS_CHUNK_SIZE)")
    sp.add_argument("--workers", type=int, default=workers, help="worker threads (QS_WORKERS, 0 = all cores)")
    sp.add_argument("--sieve-limit", type=int, default=sieve, help="sieve size override (QS_SIEVE_LIMIT, 0 = automatic)")
    sp.add_argument("--journal", default=None, help="append results and chunk markers to this file")
    sp.add_argument("--resume", action="store_true", help="continue the job recorded in --journal if it exists")
    add_format(sp)

    sp = add("list-theorems", "list the built-in theorem and conjecture specs")
    add_format(sp)
    return p


def _workers(n: int) -> int:
    if n < 0:
        raise UsageError(f"--workers must be >= 0, got {n}")
    return n or os.cpu_count() or 1


# -- commands ------------------------------------------------------------------


def cmd_omega(args) -> int:
    parity = args.parity
    xmin = args.xmin if args.xmin is not None else {"odd": 1, "even": 2, "all": 0}[parity]
    sign = 1 if args.sign == "plus" else -1
    r = omega_profile(OmegaQuery(args.d, sign, parity, xmin))
    emit_rows(
        [
            {
                "d": args.d,
                "max_omega": r.max_omega,
                "witness_x": r.witness_x,
                "value": None if r.witness_factorization is None else r.witness_factorization.n,
                "factorization": None if r.witness_factorization is None else str(r.witness_factorization),
                "evaluated": r.evaluated_count,
            }
        ],
        args.format,
    )
    return EXIT_OK


def cmd_classgroup(args) -> int:
    D = as_discriminant(args.D)
    if D.D > 0:
        raise UsageError("classgroup takes a negative discriminant; use realclass for D > 0")
    s = class_group_structure(D)
    row = {
        "D": D.D,
        "h": s.h,
        "divisors": " ".join(map(str, s.elementary_divisors)) or "1",
        "generators": " ".join(map(str, s.generators)),
        "forms": " ".join(map(str, s.forms)),
    }
    for ell in args.prime:
        row[f"order({ell})"] = order_of_prime_form(D, ell)
    emit_rows([row], args.format)
    return EXIT_OK


def cmd_realclass(args) -> int:
    D = as_discriminant(args.D)
    h = class_number_real(D)
    d = D.D if D.D % 4 == 1 else D.D // 4
    u = fundamental_unit(d)
    row = {"D": D.D, "h": h, "h_narrow": narrow_class_number(D), "unit": str(u), "unit_norm": u.norm_sign}
    if args.forms:
        row["forms"] = " ".join(map(str, reduced_forms_real(D)))
    emit_rows([row], args.format)
    return EXIT_OK


def cmd_unit(args) -> int:
    u = fundamental_unit(args.d)
    emit_rows([{"d": args.d, "t": u.t, "u": u.u, "half": u.half, "norm": u.norm_sign, "unit": str(u)}], args.format)
    return EXIT_OK


def cmd_fr(args) -> int:
    variant = FRVariant(args.variant.replace("-", "_"))
    ok = fr_check(args.d, variant)
    if args.show:
        rows = []
        for x, q in fr_quotients(args.d, variant):
            rows.append({"x": x, "quotient": q, "factorization": str(factor(q)) if q > 1 else "1"})
        emit_rows(rows, args.format, columns=("x", "quotient", "factorization"))
    else:
        emit_rows([{"d": args.d, "variant": variant.value, "holds": ok}], args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = theorems.lookup(args.id)
    bound = args.bound if args.bound is not None else spec.default_bound
    job = ScanJob(1, bound, spec.profile, spec.threshold, spec.d_filter)
    table = shared_table(job.sieve_limit(), args.sieve_limit or None)
    report = theorems.verify(spec, bound, _workers(args.workers), table=table)
    if args.values:
        for d in report.computed:
            sys.stdout.write(f"{d}\n")
    else:
        row = report.summary()
        row["missing_values"] = " ".join(map(str, report.missing))
        row["spurious_values"] = " ".join(map(str, report.spurious))
        emit_rows([row], args.format)
    if report.caveat:
        sys.stderr.write(f"note: {report.caveat}\n")
    status = EXIT_OK if report.matched else EXIT_MISMATCH
    if args.implications and _print_implications(spec.id, args.format) != EXIT_OK:
        status = EXIT_MISMATCH
    return status


def _print_implications(theorem_id: str, fmt: str) -> int:
    rows = [
        {"d": i.d, "property": i.property, "holds": i.holds, "detail": i.detail}
        for i in theorems.check_class_implications(theorem_id)
    ]
    emit_rows(rows, fmt, columns=("d", "property", "holds", "detail"))
    return EXIT_OK if all(r["holds"] for r in rows) else EXIT_MISMATCH


def cmd_implications(args) -> int:
    return _print_implications(args.id, args.format)


def _scan_profile(args):
    if args.profile == "custom":
        return custom_profile(1 if args.sign == "plus" else -1, args.parity, args.xmin)
    return args.profile


def cmd_scan(args) -> int:
    workers = _workers(args.workers)
    override = args.sieve_limit or None
    if args.resume:
        if not args.journal:
            raise UsageError("--resume needs --journal")
        if Path(args.journal).exists():
            from .scan import read_journal

            job = read_journal(args.journal).job
            table = shared_table(job.sieve_limit(), override)
            emit_stream(resume_scan(args.journal, workers, table), args.format)
            return EXIT_OK
    if args.hi is None:
        raise UsageError("scan needs --hi")
    job = ScanJob(
        args.lo,
        args.hi,
        _scan_profile(args),
        args.threshold,
        _parse_filter(args.filter),
        args.chunk_size,
        args.journal,
    )
    table = shared_table(job.sieve_limit(), override)
    emit_stream(scan(job, workers, table), args.format)
    return EXIT_OK


def cmd_list(args) -> int:
    rows = [
        {
            "id": s.id,
            "count": len(s.expected),
            "max": s.expected[-1] if s.expected else None,
            "default_bound": s.default_bound,
            "profile": s.profile,
            "threshold": s.threshold,
            "filter": s.d_filter.describe(),
        }
        for s in theorems.builtin_theorems()
    ]
    emit_rows(rows, args.format)
    return EXIT_OK


COMMANDS = {
    "omega": cmd_omega,
    "classgroup": cmd_classgroup,
    "realclass": cmd_realclass,
    "unit": cmd_unit,
    "fr": cmd_fr,
    "verify": cmd_verify,
    "implications": cmd_implications,
    "scan": cmd_scan,
    "list-theorems": cmd_list,
}


def main(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser()
    except ConfigurationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ResourceError, JournalError, MemoryError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_RESOURCE
    except (UsageError, DomainError, ConfigurationError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

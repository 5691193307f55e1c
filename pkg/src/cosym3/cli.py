"""Batch command-line front end.

Subcommands run the verification suites and print human-readable or JSON
reports.  Exit codes are a stable contract: 0 success, 1 verification
failure, 2 usage error.  JSON output carries ``schema_version`` and
round-trips every number shown in text mode; item ordering is deterministic
(sorted identity names, ascending degrees).

The only environment variable consumed is ``COSYM3_THREADS``: when set above
1, the aggregate ``report`` command runs its independent suites in a thread
pool; output assembly stays single-threaded and deterministic.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import __version__, betti, cellular, identities, so41
from .betti import BettiSequence, HorizontalBettiSequence, betti_from_horizontal
from .contact import PhiStarTable
from .exterior import ModelDims

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VERIFICATION_FAILURE = 1
EXIT_USAGE = 2


@dataclass
class Report:
    command: str
    n: int | None
    payload: dict
    failures: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def status(self, strict: bool = False) -> str:
        if self.failures or (strict and self.warnings):
            return "fail"
        return "pass"

    def to_dict(self, strict: bool = False) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "tool": "cosym3",
            "version": __version__,
            "command": self.command,
            "n": self.n,
            "status": self.status(strict),
            "failures": self.failures,
            "warnings": self.warnings,
            **self.payload,
        }


def _print_text_items(lines: list[str]) -> None:
    for line in lines:
        print(line)


# ---------------------------------------------------------------------------
# verify-identities
# ---------------------------------------------------------------------------


def run_identities(n: int, inject_sign_error: bool = False) -> Report:
    table = None
    if inject_sign_error:
        table = PhiStarTable.build(ModelDims(n)).with_sign_flip(1, 0)
    reports = identities.verify_identities(n, table)
    failures = [r.name for r in reports if not r.passed]
    payload = {"identities": [r.to_dict() for r in reports]}
    return Report("verify-identities", n, payload, failures)


def _identities_text(report: Report) -> list[str]:
    lines = [f"identity suite, n = {report.n}"]
    for item in report.payload["identities"]:
        status = "PASS" if item["passed"] else "FAIL"
        lines.append(f"  {status}  {item['name']}: {item['statement']}")
        if item["witness"]:
            w = item["witness"]
            lines.append(
                f"        witness [{w['member']}] degree {w['degree']} blade {w['blade']}"
            )
            lines.append(f"        lhs = {w['lhs']}")
            lines.append(f"        rhs = {w['rhs']}")
    lines.append(f"overall: {report.status().upper()}")
    return lines


# ---------------------------------------------------------------------------
# so41-check
# ---------------------------------------------------------------------------


def run_so41(n: int, inject_sign_error: bool = False) -> Report:
    module = so41.verify_module(
        n, corrupt_generator="K3" if inject_sign_error else None
    )
    failures = []
    if not module.defining_relations_ok:
        failures.append("defining relations")
    if module.basis_rank != 10:
        failures.append("basis rank")
    if not module.bracket_table_ok:
        failures.append("bracket table")
    if module.operator_span_rank != 10:
        failures.append("operator span rank")
    if module.image_rank != 10:
        failures.append("image rank")
    failures.extend(p.name for p in module.pairs if not p.ok)
    return Report("so41-check", n, {"module": module.to_dict()}, failures)


def _so41_text(report: Report) -> list[str]:
    m = report.payload["module"]
    lines = [f"so(4,1) module check, n = {report.n}"]
    lines.append(
        f"  defining relations: {'PASS' if m['defining_relations_ok'] else 'FAIL'}"
    )
    lines.append(f"  basis rank: {m['basis_rank']} (expected 10)")
    lines.append(f"  bracket table: {'PASS' if m['bracket_table_ok'] else 'FAIL'}")
    lines.append(f"  operator span rank: {m['operator_span_rank']} (expected 10)")
    lines.append(f"  image rank: {m['image_rank']} (expected 10)")
    for pair in m["pairs"]:
        status = "PASS" if pair["ok"] else "FAIL"
        detail = f" ({pair['detail']})" if pair["detail"] else ""
        lines.append(f"  {status}  {pair['pair']}{detail}")
    lines.append(f"overall: {report.status().upper()}")
    return lines


# ---------------------------------------------------------------------------
# betti
# ---------------------------------------------------------------------------


def run_betti(n: int, bh_values: list[int]) -> Report:
    bh = HorizontalBettiSequence(n, tuple(bh_values))
    full = betti_from_horizontal(bh)
    divisibility = betti.check_divisibility(full)
    bounds = betti.check_bounds(full, n)
    horizontal = betti.check_horizontal_constraints(bh)
    failures = []
    warnings = []
    for rep in (divisibility, bounds, horizontal):
        for item in rep.items:
            if item.ok:
                continue
            if item.warning:
                warnings.append(f"{rep.name}: {item.name}")
            else:
                failures.append(f"{rep.name}: {item.name}")
    payload = {
        "bh": list(bh.values),
        "betti": list(full.values),
        "series": list(full.values),
        "divisibility": divisibility.to_dict(),
        "bounds": bounds.to_dict(),
        "horizontal": horizontal.to_dict(),
    }
    return Report("betti", n, payload, failures, warnings)


def _betti_text(report: Report) -> list[str]:
    lines = [f"betti arithmetic, n = {report.n}"]
    lines.append(f"  bh = {','.join(str(v) for v in report.payload['bh'])}")
    lines.append(f"  b  = {','.join(str(v) for v in report.payload['betti'])}")
    for section in ("divisibility", "bounds", "horizontal"):
        rep = report.payload[section]
        lines.append(f"  {rep['name']}:")
        for item in rep["items"]:
            status = "PASS" if item["ok"] else ("WARN" if item["warning"] else "FAIL")
            margin = f", margin {item['margin']}" if item["margin"] is not None else ""
            lines.append(f"    {status}  {item['name']} ({item['detail']}{margin})")
    lines.append(f"overall: {report.status().upper()}")
    return lines


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------


def run_homology(
    integer: bool = False,
    inject_sign_error: bool = False,
    include_boundaries: str | None = None,
) -> Report:
    twist = cellular.unit_translation_twist()
    if inject_sign_error:
        twist = twist.with_sign_flip(3)
    failures: list[str] = []
    payload: dict = {}
    try:
        complex_ = cellular.build_complex(twist)
    except cellular.ComplexConsistencyError as err:
        failures.append(f"boundary squared nonzero on cell {sorted(err.cell)}")
        payload["boundary_squared_zero"] = False
        return Report("homology", None, payload, failures)
    payload["boundary_squared_zero"] = True
    payload["cell_counts"] = list(complex_.cell_counts())

    integral = cellular.homology(complex_, "integer")
    rational = cellular.homology(complex_, "rational")
    if integral.betti != rational.betti:
        failures.append("integer and rational Betti numbers disagree")
    shown = integral if integer else rational
    payload["homology"] = shown.to_dict()
    payload["torsion"] = [list(t) for t in integral.torsion]
    payload["betti"] = list(integral.betti)
    payload["b2"] = integral.betti[2]

    oracle = cellular.invariant_cohomology_oracle()
    payload["oracle_bh"] = list(oracle.values)
    payload["oracle_betti"] = list(betti_from_horizontal(oracle).values)
    check = cellular.cross_check(integral, oracle)
    payload["cross_check"] = check.to_dict()
    failures.extend(item.name for item in check.items if not item.ok)

    sequence_checks = [
        betti.check_divisibility(BettiSequence(integral.betti)),
        betti.check_bounds(BettiSequence(integral.betti), 1),
    ]
    payload["constraints"] = [rep.to_dict() for rep in sequence_checks]
    for rep in sequence_checks:
        failures.extend(
            f"{rep.name}: {item.name}" for item in rep.items if not item.ok
        )

    if include_boundaries:
        dumps = []
        for k in range(1, cellular.TOTAL_DIM + 1):
            entry = {
                "k": k,
                "rows": len(complex_.cells[k - 1]),
                "cols": len(complex_.cells[k]),
                "entries": [list(t) for t in complex_.triples(k)],
            }
            dumps.append(entry)
        payload["boundaries"] = dumps
        payload["boundaries_format"] = include_boundaries
    return Report("homology", None, payload, failures)


def _homology_text(report: Report) -> list[str]:
    lines = ["cellular homology of the twisted seven-torus quotient"]
    if not report.payload.get("boundary_squared_zero", True):
        lines.append("  FAIL  boundary squared nonzero")
        lines.append(f"overall: {report.status().upper()}")
        return lines
    payload = report.payload
    lines.append(f"  cell counts: {payload['cell_counts']}")
    hom = payload["homology"]
    lines.append(f"  coefficients: {hom['coefficients']}")
    lines.append(f"  boundary ranks: {hom['boundary_ranks']}")
    lines.append(f"  betti: {payload['betti']}")
    lines.append(f"  torsion: {payload['torsion']}")
    lines.append(f"  euler characteristic: {hom['euler_characteristic']}")
    lines.append(f"  oracle horizontal: {payload['oracle_bh']}")
    lines.append(f"  oracle betti: {payload['oracle_betti']}")
    for item in payload["cross_check"]["items"]:
        status = "PASS" if item["ok"] else "FAIL"
        lines.append(f"  {status}  {item['name']} ({item['detail']})")
    for rep in payload["constraints"]:
        for item in rep["items"]:
            status = "PASS" if item["ok"] else "FAIL"
            lines.append(f"  {status}  {rep['name']}: {item['name']}")
    b2 = payload["b2"]
    if b2 < 21 and b2 != 25:
        lines.append(
            f"  verdict: b2 = {b2} rules out both product patterns "
            "(21 for the seven-torus, 25 for K3 x T^3): "
            "not a product cohomology"
        )
    if payload.get("boundaries") and payload.get("boundaries_format") == "text":
        for entry in payload["boundaries"]:
            lines.append(
                f"  boundary {entry['k']}: {entry['rows']} x {entry['cols']} sparse triples"
            )
            for row, col, value in entry["entries"]:
                lines.append(f"    {row} {col} {value}")
    lines.append(f"overall: {report.status().upper()}")
    return lines


# ---------------------------------------------------------------------------
# report (aggregate)
# ---------------------------------------------------------------------------


def _thread_count() -> int:
    raw = os.environ.get("COSYM3_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)


def run_report(n: int) -> Report:
    dims = ModelDims(n)
    jobs = {
        "identities": lambda: run_identities(n),
        "so41": lambda: run_so41(n),
        "betti_torus": lambda: run_betti(
            n, list(HorizontalBettiSequence.from_sector_counts(dims).values)
        ),
        "homology": lambda: run_homology(),
    }
    threads = _thread_count()
    results: dict[str, Report] = {}
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = {name: pool.submit(job) for name, job in jobs.items()}
            for name, future in futures.items():
                results[name] = future.result()
    else:
        for name, job in jobs.items():
            results[name] = job()
    ranks = [betti.s_k_rank(n, k) for k in range(0, n + 1)]
    rank_failures = [f"power product rank k={r.k}" for r in ranks if not r.passed]

    failures = list(rank_failures)
    warnings: list[str] = []
    for name in sorted(jobs):
        sub = results[name]
        failures.extend(f"{name}: {f}" for f in sub.failures)
        warnings.extend(f"{name}: {w}" for w in sub.warnings)
    payload = {
        "suites": {name: results[name].to_dict() for name in sorted(jobs)},
        "power_product_ranks": [r.to_dict() for r in ranks],
    }
    return Report("report", n, payload, failures, warnings)


def _report_text(report: Report) -> list[str]:
    lines = [f"aggregate verification report, n = {report.n}"]
    for name, sub in report.payload["suites"].items():
        lines.append(f"  suite {name}: {sub['status'].upper()}")
    for rank in report.payload["power_product_ranks"]:
        status = "PASS" if rank["passed"] else "FAIL"
        lines.append(
            f"  {status}  power product rank k={rank['k']}: "
            f"{rank['rank']} (expected {rank['expected']})"
        )
    if report.failures:
        lines.append("  failures:")
        for failure in report.failures:
            lines.append(f"    - {failure}")
    lines.append(f"overall: {report.status().upper()}")
    return lines


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cosym3",
        description=(
            "Exact verification suites for the flat 3-structure operator "
            "algebra, Betti constraints, and the twisted-torus homology."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, ranks):
        p.add_argument(
            "--n", type=int, default=1, choices=ranks, help="quaternionic rank"
        )
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument(
            "--strict", action="store_true", help="treat warnings as failures"
        )

    p_ident = sub.add_parser("verify-identities", help="run the operator identity suite")
    add_common(p_ident, (1, 2, 3))
    p_ident.add_argument(
        "--inject-sign-error",
        action="store_true",
        help="flip one sign in the structure table (self-test hook)",
    )

    p_so41 = sub.add_parser("so41-check", help="verify the so(4,1) module structure")
    add_common(p_so41, (1, 2))
    p_so41.add_argument(
        "--inject-sign-error",
        action="store_true",
        help="negate the K3 generator (self-test hook)",
    )

    p_betti = sub.add_parser("betti", help="Betti arithmetic and constraint checks")
    add_common(p_betti, (0, 1, 2, 3))
    p_betti.add_argument(
        "--bh",
        required=True,
        help="comma-separated horizontal Betti numbers, length 4n + 1",
    )

    p_hom = sub.add_parser("homology", help="cellular homology of the example")
    p_hom.add_argument("--json", action="store_true", help="emit a JSON report")
    p_hom.add_argument(
        "--strict", action="store_true", help="treat warnings as failures"
    )
    p_hom.add_argument(
        "--integer",
        action="store_true",
        help="display integral homology (ranks and torsion via Smith forms)",
    )
    p_hom.add_argument(
        "--boundaries",
        choices=("text", "json"),
        help="include the boundary matrices as sparse triples",
    )
    p_hom.add_argument(
        "--inject-sign-error",
        action="store_true",
        help="flip one sign in the twist (self-test hook)",
    )

    p_rep = sub.add_parser("report", help="run every suite and aggregate")
    add_common(p_rep, (1, 2))
    return parser


def _emit(report: Report, as_json: bool, strict: bool, text_lines) -> int:
    if as_json:
        print(json.dumps(report.to_dict(strict), indent=2, sort_keys=True))
    else:
        _print_text_items(text_lines(report))
    return EXIT_OK if report.status(strict) == "pass" else EXIT_VERIFICATION_FAILURE


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_USAGE if err.code not in (0, None) else 0

    if args.command == "verify-identities":
        report = run_identities(args.n, args.inject_sign_error)
        return _emit(report, args.json, args.strict, _identities_text)

    if args.command == "so41-check":
        report = run_so41(args.n, args.inject_sign_error)
        return _emit(report, args.json, args.strict, _so41_text)

    if args.command == "betti":
        try:
            values = [int(x) for x in args.bh.split(",") if x.strip() != ""]
        except ValueError:
            print("error: --bh must be a comma-separated integer list", file=sys.stderr)
            return EXIT_USAGE
        if len(values) != 4 * args.n + 1:
            print(
                f"error: --bh must have length 4n + 1 = {4 * args.n + 1}, "
                f"got {len(values)}",
                file=sys.stderr,
            )
            return EXIT_USAGE
        report = run_betti(args.n, values)
        return _emit(report, args.json, args.strict, _betti_text)

    if args.command == "homology":
        report = run_homology(args.integer, args.inject_sign_error, args.boundaries)
        return _emit(report, args.json, args.strict, _homology_text)

    if args.command == "report":
        report = run_report(args.n)
        return _emit(report, args.json, args.strict, _report_text)

    parser.error(f"unknown command {args.command}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

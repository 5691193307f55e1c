#!/usr/bin/env python3
"""Run every verification suite and write the aggregate JSON report.

Usage:
    python3 scripts/run_full_report.py [--n 1] [--out report.json]

Equivalent to ``cosym3 report --n N --json`` but also prints a short
human-readable summary and persists the JSON next to it.
"""

import argparse
import json
import sys
import time
from pathlib import Path

from cosym3.cli import run_report


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=1, choices=(1, 2))
    parser.add_argument("--out", type=Path, default=Path("report.json"))
    args = parser.parse_args()

    start = time.perf_counter()
    report = run_report(args.n)
    elapsed = time.perf_counter() - start

    payload = report.to_dict()
    args.out.write_text(json.dumps(payload, indent=2, sort_keys=True))

    print(f"aggregate report for n = {args.n} ({elapsed:.1f}s)")
    for name, suite in sorted(payload["suites"].items()):
        print(f"  {name}: {suite['status']}")
    for rank in payload["power_product_ranks"]:
        print(
            f"  power product rank k={rank['k']}: {rank['rank']} "
            f"(expected {rank['expected']})"
        )
    print(f"overall: {payload['status']}")
    print(f"wrote {args.out}")
    return 0 if payload["status"] == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())

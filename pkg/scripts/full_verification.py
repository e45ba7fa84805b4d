#!/usr/bin/env python3
"""Run the complete verification battery and print a one-line-per-check
summary table, grouped by suite, with per-suite wall times.

This is the human-facing companion to ``appell-kit verify all``: same
checks, but a console table instead of a machine report.  Exits 0 only if
every record passes.

Usage:
    python scripts/full_verification.py [--samples 100] [--seed 0]
        [--tolerance 1e-9] [--exact-order 80] [--grid 1] [--json out.json]
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from appell_kit import cli as kit_cli
from appell_kit import identities


@dataclass(frozen=True)
class RunConfig:
    samples: int = 100
    seed: int = 0
    tolerance: float = 1e-9
    exact_order: int = 80
    grid: int = 1
    json_path: str | None = None


def collect(config: RunConfig) -> tuple[list[dict], dict[str, float]]:
    """All verification records plus per-suite wall times."""
    suites = (
        (
            "numeric",
            lambda: kit_cli._numeric_records(
                identities.registry_ids(), config.samples, config.seed, config.tolerance
            ),
        ),
        ("exact", lambda: kit_cli._exact_records(config.exact_order)),
        (
            "bundles",
            lambda: kit_cli._bundle_records(config.samples, config.seed, config.tolerance),
        ),
        (
            "modular",
            lambda: kit_cli._modular_records(
                config.samples, config.seed, config.tolerance, config.grid
            ),
        ),
    )
    records: list[dict] = []
    timings: dict[str, float] = {}
    for name, build in suites:
        started = time.monotonic()
        for record in build():
            record["suite"] = name
            records.append(record)
        timings[name] = time.monotonic() - started
    return records, timings


def print_table(records: list[dict], timings: dict[str, float]) -> bool:
    width = max(len(r["record_id"]) for r in records)
    all_passed = True
    for suite in timings:
        print(f"-- {suite} ({timings[suite]:.2f}s)")
        for record in records:
            if record["suite"] != suite:
                continue
            all_passed &= record["passed"]
            status = "ok  " if record["passed"] else "FAIL"
            if record["worst"] is None:
                measure = "exact"
            else:
                measure = f"worst {record['worst']:.3e}"
            print(f"  {status} {record['record_id']:<{width}}  {measure}")
    total = sum(timings.values())
    verdict = "all checks passed" if all_passed else "FAILURES PRESENT"
    print(f"-- {len(records)} records in {total:.2f}s: {verdict}")
    return all_passed


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--tolerance", type=float, default=1e-9)
    parser.add_argument("--exact-order", type=int, default=80, dest="exact_order")
    parser.add_argument("--grid", type=int, default=1)
    parser.add_argument("--json", default=None, dest="json_path")
    args = parser.parse_args(argv)
    config = RunConfig(
        samples=args.samples,
        seed=args.seed,
        tolerance=args.tolerance,
        exact_order=args.exact_order,
        grid=args.grid,
        json_path=args.json_path,
    )
    records, timings = collect(config)
    all_passed = print_table(records, timings)
    if config.json_path:
        with open(config.json_path, "w", encoding="utf-8") as fh:
            json.dump({"records": records, "timings": timings}, fh, sort_keys=True, indent=2)
        print(f"wrote {config.json_path}")
    return 0 if all_passed else 1


if __name__ == "__main__":
    sys.exit(main())

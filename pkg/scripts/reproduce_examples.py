#!/usr/bin/env python3
"""
Build the profile of every worked example pair, print a concise preview and
export the machine-readable reports as JSON.

Usage:
  python3 scripts/reproduce_examples.py [--out PATH] [--concurrency N]

Notes:
- Uses existing app.config settings; --concurrency overrides settings.concurrency_limit.
- Pairs whose analysis fails are reported and skipped, the rest still run.
"""
from __future__ import annotations

import os
import sys
import argparse
import json
from typing import List, Tuple, Dict, Any

# Ensure repo root is on sys.path when running as a script
REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if REPO_ROOT not in sys.path:
    sys.path.insert(0, REPO_ROOT)

from app.config import settings, setup_logging  # noqa: E402
from app.errors import GcdPatternError  # noqa: E402
from app.main import to_report_out  # noqa: E402
from app.schemas import GcdProfile  # noqa: E402
from app.services.patterns import (  # noqa: E402
    build_profile,
    count_gcd_tuples_mod4,
    count_poly_functions,
    xpow_plus_one_analysis,
)
from app.services.poly import parse_poly  # noqa: E402
from app.services.sylvester import delta_report  # noqa: E402

logger = setup_logging("examples")

EXAMPLE_PAIRS: List[Tuple[str, str]] = [
    ("x^3-5x^2+10x-12", "x^2+3"),
    ("x^2-32x+135", "x^2+3x+9"),
    ("x^2+4", "x^2-4"),
    ("x^2-9x+16", "x^2-7x+12"),
    ("x^2+27", "x^2-18x+108"),
    ("x^2+8x+7", "x^2+8x+15"),
]


def print_preview(profiles: List[GcdProfile]) -> None:
    for profile in profiles:
        print("\n=== Pair ===")
        print("A:", profile.A)
        print("B:", profile.B)
        print("resultant:", profile.resultant_report.delta_signed)
        print("delta:", profile.delta)
        for p, pat in sorted(profile.patterns.items()):
            shown = pat.values if pat.length <= 16 else pat.values[:16] + ["..."]
            print(f"m_{p} (length {pat.length}):", shown)
        print("global period:", profile.global_period)
        print("value set:", profile.value_set)
        failed = [c.name for c in profile.checks if not c.holds]
        print("checks:", "all pass" if not failed else "FAILED " + ", ".join(failed))


def build_export_records(profiles: List[GcdProfile]) -> List[Dict[str, Any]]:
    records: List[Dict[str, Any]] = []
    for profile in profiles:
        rec = to_report_out(profile).model_dump()
        rec["delta_routes_agree"] = delta_report(profile.A, profile.B).agree
        records.append(rec)
    return records


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument(
        "--out",
        default="app/data/example_profiles.json",
        help="Output JSON path for the profiles",
    )
    parser.add_argument("--concurrency", type=int, default=1, help="Concurrency limit for pattern extraction")
    args = parser.parse_args()

    settings.concurrency_limit = args.concurrency

    profiles: List[GcdProfile] = []
    for a_text, b_text in EXAMPLE_PAIRS:
        try:
            profiles.append(build_profile(parse_poly(a_text), parse_poly(b_text)))
        except GcdPatternError:
            logger.exception("Failed to analyze pair (%s, %s)", a_text, b_text)

    if not profiles:
        print("No pair could be analyzed.")
        return

    # Build and save export before printing preview
    export_records = build_export_records(profiles)
    out_dir = os.path.dirname(args.out)
    if out_dir and not os.path.exists(out_dir):
        os.makedirs(out_dir, exist_ok=True)
    with open(args.out, "w", encoding="utf-8") as f:
        json.dump(export_records, f, ensure_ascii=False, indent=2)
    print(f"Saved {len(export_records)} records to {args.out}")

    print_preview(profiles)

    print("\n=== Counting ===")
    print("polynomial functions mod 4:", count_poly_functions(4))
    print("gcd tuples mod 4:", count_gcd_tuples_mod4())

    print("\n=== x^a + 1 against x^b + 1 ===")
    for a, b in [(1, 2), (2, 4), (3, 5)]:
        report = xpow_plus_one_analysis(a, b)
        if report.coprime:
            print(f"({a}, {b}): coprime, pattern {report.pattern}, delta {report.delta}")
        else:
            print(f"({a}, {b}): common factor {report.common_factor}")


if __name__ == "__main__":
    main()

"""Hilbert ratios against the growth reference for a descriptor file or X3."""

from __future__ import annotations

import argparse
import sys

from loophom.corpus import X3
from loophom.files import load_descriptor
from loophom.report import ReportConfig, build_report


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("path", nargs="?", help="descriptor JSON (default: X3)")
    parser.add_argument("--max-degree", type=int, default=13)
    args = parser.parse_args(argv)
    desc = load_descriptor(args.path) if args.path else X3
    doc = build_report(desc, ReportConfig(max_degree=args.max_degree))
    moore = doc["moore"]
    if not moore.get("applicable"):
        print(f"{desc.name}: {moore['reason']}")
        return 0
    dims = doc["hilbert"]["dims"]
    print(f"{desc.name}: reference {moore['growth_reference']}, tolerance {moore['tolerance']}")
    print(f"{'m':>3} {'dim':>12} {'ratio':>10} {'deviation':>10}")
    for row in moore["ratios"]:
        m = row["m"]
        mark = "" if row["within_tolerance"] else "  *"
        print(f"{m:>3} {dims[m]:>12} {row['ratio']:>10} {row['relative_deviation']:>10}{mark}")
    print(f"tail converged: {moore['tail_converged']}, populated: {moore['populated']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Re-verify the shipped census catalog.

Runs every expected value and every applicable identity check for each
catalog entry and prints one line per comparison.  This is the same work
`strat-euler catalog run` does, exposed as a script so the full detail
(including per-check LHS/RHS values) is easy to eyeball or diff.
"""

import argparse
import sys

from strat_euler import list_entries, load_entry, run_entry


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "entries",
        nargs="*",
        metavar="NAME",
        help="catalog entries to run (default: all)",
    )
    parser.add_argument(
        "-q",
        "--quiet",
        action="store_true",
        help="print only failures and the summary",
    )
    args = parser.parse_args(argv)

    names = args.entries or list_entries()
    failures = 0
    total = 0
    for name in names:
        report = run_entry(load_entry(name))
        lines = []
        for exp in report.expected:
            ok = exp.got == exp.want
            lines.append((ok, f"expected {exp.key}: want={exp.want} got={exp.got}"))
        for check in report.checks:
            ok = check.status == "OK"
            where = f" [{check.detail}]" if check.detail else ""
            lines.append(
                (ok, f"{check.name}{where}: LHS={check.lhs} RHS={check.rhs} {check.status}")
            )
        total += len(lines)
        bad = [text for ok, text in lines if not ok]
        failures += len(bad)
        if args.quiet:
            for text in bad:
                print(f"{name}: {text}")
        else:
            print(f"== {name} ==")
            for ok, text in lines:
                print(f"  {text}")
    print(f"{total} comparisons, {failures} failed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

"""Run the whole verification grid and print one line per report.

Usage:
    python3 scripts/run_verify_all.py [--only ID] [--json OUT.json]

Exit status is 1 if anything came back refuted, 3 if anything was
not-certifiable, 0 otherwise — same convention as the CLI.
"""

import argparse
import json
import sys
import time

from rostcalc import __version__
from rostcalc.kunneth import default_grid, verify_theorem


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--only", help="run only reports with this theorem id")
    ap.add_argument("--json", help="write the aggregated reports here")
    args = ap.parse_args()

    grid = default_grid()
    if args.only:
        grid = tuple(g for g in grid if g[0] == args.only)
        if not grid:
            print(f"no grid entries with id {args.only!r}", file=sys.stderr)
            return 2

    reports = []
    t_total = time.monotonic()
    for id_, params in grid:
        t0 = time.monotonic()
        report = verify_theorem(id_, params)
        dt = time.monotonic() - t0
        reports.append(report)
        tag = {"verified": "ok ", "refuted": "FAIL", "not-certifiable": "n/c "}[
            report.verdict
        ]
        print(f"[{tag}] {id_:<28} {json.dumps(params, sort_keys=True):<44} {dt:6.2f}s")
    print(f"{len(reports)} reports in {time.monotonic() - t_total:.2f}s")

    if args.json:
        payload = {
            "version": __version__,
            "reports": [r.to_json() for r in reports],
        }
        with open(args.json, "w") as fh:
            json.dump(payload, fh, sort_keys=True, indent=2)
            fh.write("\n")
        print(f"wrote {args.json}")

    verdicts = {r.verdict for r in reports}
    if "refuted" in verdicts:
        return 1
    if "not-certifiable" in verdicts:
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())

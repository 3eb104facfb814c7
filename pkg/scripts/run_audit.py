#!/usr/bin/env python3
"""Run a configurable checker audit and write the JSON aggregate.

Default configuration matches the suite's bound-checker corpus; use the
flags to scale it up or down or to switch checker sets.
"""

import argparse
import json
import sys
import time

from subsumlab.search import AuditConfig, run_audit


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=16)
    ap.add_argument("--group-cap", type=int, default=10)
    ap.add_argument("--len-cap", type=int, default=10)
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--checkers", default="subsum_kneser,s_star,lemma_extra")
    ap.add_argument("--out", default=None, help="write JSON aggregate here")
    args = ap.parse_args()

    cfg = AuditConfig(
        max_group_order=args.max_order,
        exhaustive_group_cap=args.group_cap,
        exhaustive_len_cap=args.len_cap,
        random_samples=args.samples,
        seed=args.seed,
        jobs=args.jobs,
        checkers=tuple(args.checkers.split(",")),
    )
    t0 = time.perf_counter()
    report = run_audit(cfg)
    elapsed = time.perf_counter() - t0

    payload = report.to_dict()
    text = json.dumps(payload, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(f"# {report.instances} instances, {report.checks_run} checks, "
          f"{len(report.violations)} violations, {elapsed:.1f}s",
          file=sys.stderr)
    return 0 if report.holds else 1


if __name__ == "__main__":
    sys.exit(main())

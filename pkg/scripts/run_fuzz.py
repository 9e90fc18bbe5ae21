"""Run the invariant suites over a seeded corpus and write the JSON report.

    python scripts/run_fuzz.py --cases 200 --seed 7 --out fuzz_report.json
"""

import argparse
import sys
import time

from cubefix import io
from cubefix.fuzz import SUITES, run_fuzz


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suites", default=",".join(SUITES))
    p.add_argument("--out")
    args = p.parse_args()
    t0 = time.perf_counter()
    report = run_fuzz(args.cases, args.seed, [s for s in args.suites.split(",") if s])
    elapsed = time.perf_counter() - t0
    text = io.dumps(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    for name, r in report["suites"].items():
        print(f"{name:15s} passed {r['passed']:4d}  failed {r['failed']:3d}  skipped {r['skipped']:4d}")
        for f in r["failures"][:5]:
            print(f"    case {f['case']} seed {f['seed']}: {f['detail']}")
    print(f"{args.cases} cases in {elapsed:.1f}s, ok={report['ok']}")
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())

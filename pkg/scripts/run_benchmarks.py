"""Run every benchmark suite and write one CSV per suite into an output directory."""

import argparse
from pathlib import Path

from fairstream.bench import SUITES, run_bench, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results/bench")
    ap.add_argument("--suite", choices=SUITES, action="append", help="repeatable; default all")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for suite in args.suite or SUITES:
        rows = run_bench(suite)
        with open(out / f"{suite}.csv", "w") as fh:
            write_csv(fh, rows)
        for r in rows:
            print(f"{suite:20s} W={r.window:<6d} s={r.block:<4d} mean={r.mean_us:9.2f}us "
                  f"p90={r.p90_us:9.2f}us tput={r.throughput_wps:10.1f}/s")


if __name__ == "__main__":
    main()

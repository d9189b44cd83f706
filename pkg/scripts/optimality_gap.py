"""Compare the reorder's fair-block count with the exhaustive optimum on small random multisets."""

import argparse
import random
from collections import Counter
from fractions import Fraction

from fairstream.core import FairnessConstraint, WindowSpec, valid_combinations
from fairstream.gen import from_values
from fairstream.oracle import brute_force_reorder
from fairstream.reorder import bfair_reorder


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--show", type=int, default=5, help="gap examples to print")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    gaps = Counter()
    by_combos = Counter()
    shown = 0
    for _ in range(args.trials):
        ell, s = rng.choice((2, 3)), rng.choice((2, 3, 4))
        names = [f"v{i}" for i in range(ell)]
        w = [rng.randint(1, 10) for _ in range(ell)]
        c = FairnessConstraint.from_lists(names, [Fraction(x, sum(w)) for x in w])
        spec = WindowSpec(s, s)
        vals = [rng.choice(names) for _ in range(rng.randint(s, args.max_n))]
        got = bfair_reorder(from_values(vals), c, spec).fair_block_count
        best = brute_force_reorder(vals, c, spec)
        n_combos = len(valid_combinations(c, spec))
        by_combos[n_combos, got == best] += 1
        gaps[best - got] += 1
        if got != best and shown < args.show:
            shown += 1
            print(f"gap {best - got}: ranges={c.ranges(s)} s={s} values={' '.join(vals)} got={got} best={best}")
    print("gap histogram:", dict(sorted(gaps.items())))
    for k in sorted({k for k, _ in by_combos}):
        ok, bad = by_combos[k, True], by_combos[k, False]
        print(f"{k} allowed combination(s): optimal {ok}/{ok + bad}")


if __name__ == "__main__":
    main()

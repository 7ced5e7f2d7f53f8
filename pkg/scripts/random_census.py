"""Classify random states and tabulate the class populations and criterion agreement.

    python scripts/random_census.py --samples 2000 --dims 2 2
"""

import argparse
from collections import Counter

import numpy as np

from qsep import classify, random_density


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--dims", type=int, nargs=2, default=(2, 2))
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    n = args.dims[0] * args.dims[1]
    labels = Counter()
    detected = Counter()
    for _ in range(args.samples):
        rank = int(rng.integers(1, n + 1))
        r = classify(random_density(tuple(args.dims), rank, seed=rng))
        labels[(rank, r.class_label)] += 1
        for v in (r.ppt, r.majorization, r.entropy):
            detected[v.criterion] += v.violated

    print(f"dims {tuple(args.dims)}, {args.samples} Wishart states with uniform random rank")
    for (rank, label), count in sorted(labels.items()):
        print(f"  rank {rank:2d}  {label:<13} {count}")
    print("violations per criterion:", dict(detected))


if __name__ == "__main__":
    main()

"""Compare the strict, sign-relaxed and integer factorization tests with the
weight-based semifree test on Bott matrices with even entries.

The strict test (unit multipliers +1) and the weight test agree when every
entry is 0 or -2; once +2 entries appear the relaxed test is the one that
tracks the weights.
"""

import argparse
from collections import Counter
from dataclasses import dataclass

from bottcube.quasitoric import enumerate_bott_matrices
from bottcube.semifree import enumerate_semifree_vectors, factorization_report


@dataclass
class Config:
    max_rank: int = 4
    values: tuple = (-2, 0, 2)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("--values", type=int, nargs="+", default=[-2, 0, 2])
    a = p.parse_args()
    cfg = Config(a.max_rank, tuple(a.values))

    print(f"{'n':>2} {'matrices':>9} {'semifree':>9} {'strict=':>8} {'relaxed=':>9} {'integer':>8}")
    for n in range(1, cfg.max_rank + 1):
        c = Counter()
        for bm in enumerate_bott_matrices(n, cfg.values):
            oracle = bool(enumerate_semifree_vectors(bm.as_char()))
            rep = factorization_report(bm)
            c["total"] += 1
            c["semifree"] += oracle
            c["strict"] += rep["strict_factorization"] == oracle
            c["relaxed"] += rep["relaxed_factorization"] == oracle
            c["integer"] += rep["integer_factorization"]
        print(f"{n:>2} {c['total']:>9} {c['semifree']:>9} {c['strict']:>8} {c['relaxed']:>9} {c['integer']:>8}")
    print("strict= / relaxed= count matrices where that test agrees with the weight test")


if __name__ == "__main__":
    main()

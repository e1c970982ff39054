"""Enumerate complete smooth plane fans and list those with a semifree circle.

Each semifree (fan, nu) is also re-indexed so nu sits in the first cone,
which shows where the fan lands among the three normal forms.
"""

import argparse
from collections import Counter
from dataclasses import dataclass

from bottcube.fan2d import NORMAL_PAIRS, enumerate_fans, normalize_at, semifree_vectors


@dataclass
class SweepConfig:
    max_rays: int = 10
    coord_bound: int = 6


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-rays", type=int, default=10)
    p.add_argument("--bound", type=int, default=6)
    a = p.parse_args()
    cfg = SweepConfig(a.max_rays, a.bound)

    by_rays = Counter()
    hits = []
    for f in enumerate_fans(cfg.max_rays, cfg.coord_bound):
        by_rays[len(f)] += 1
        vecs = semifree_vectors(f)
        if vecs:
            hits.append((f, vecs))
    print(f"fans by ray count (max_rays={cfg.max_rays}, bound={cfg.coord_bound}):")
    for m in sorted(by_rays):
        print(f"  {m:>2} rays: {by_rays[m]}")
    print(f"\n{len(hits)} fans with a semifree circle")
    for f, vecs in hits:
        for nu in vecs:
            g, _ = normalize_at(f, nu)
            pair = (g.rays[2], g.rays[3])
            tag = NORMAL_PAIRS.index(pair) if pair in NORMAL_PAIRS else "?"
            print(f"  {str(f.rays):<42} nu={str(nu):<9} -> normal form {tag} {pair}")


if __name__ == "__main__":
    main()

"""Sweep characteristic matrices and write JSON-lines records plus a summary.

    python scripts/run_census.py --rank 3 --bound 2 --jobs 4 --out results/
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from bottcube.census import dumps, run_census, summarize


@dataclass
class CensusConfig:
    kind: str = "char"
    rank: int = 2
    entry_min: int = -3
    entry_max: int = 3
    jobs: int = 1
    out: str = "results"


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--kind", choices=["char", "bott"], default="char")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="results")
    a = p.parse_args()
    cfg = CensusConfig(a.kind, a.rank, -a.bound, a.bound, a.jobs, a.out)

    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"census_{cfg.kind}_n{cfg.rank}_{cfg.entry_min}_{cfg.entry_max}"
    t0 = time.perf_counter()
    records = []
    with open(out / f"{stem}.jsonl", "w") as fh:
        for rec in run_census(cfg.kind, cfg.rank, cfg.entry_min, cfg.entry_max, jobs=cfg.jobs):
            records.append(rec)
            fh.write(dumps(rec) + "\n")
    summary = summarize(records)
    # records that are semifree but not Bott in the given omniorientation
    summary["semifree_not_bott_as_given"] = sum(1 for r in records if r.get("semifree_vectors") and not r.get("bott"))
    summary["semifree_not_bott_up_to_omni"] = sum(
        1 for r in records if r.get("semifree_vectors") and not r.get("bott_up_to_omniorientation"))
    summary["seconds"] = round(time.perf_counter() - t0, 2)
    summary["config"] = asdict(cfg)
    (out / f"{stem}.summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    for k, v in summary.items():
        if k != "config":
            print(f"{k:<32}{v}")


if __name__ == "__main__":
    main()

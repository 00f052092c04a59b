#!/usr/bin/env python3
"""Derive and certify every identity up to a given order, both anchors.

    python3 scripts/verify_sweep.py --r-max 8 --json sweep.jsonl
"""

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass

from zetasums import Anchor, Precision, verify_identity


@dataclass
class SweepConfig:
    r_max: int = 8
    low_digits: int = 20      # r <= 3 at the quarter anchor, and the half anchor
    high_digits: int = 40     # r >= 4 at the quarter anchor
    weights: tuple = (-1, 1)
    workers: int = 1

    def digits(self, r, anchor):
        return self.high_digits if anchor is Anchor.QUARTER and r >= 4 else self.low_digits


def sweep(cfg: SweepConfig):
    for anchor in Anchor:
        for weight in cfg.weights:
            for r in range(1 if weight == -1 else 2, cfg.r_max + 1):
                rep = verify_identity(r, anchor, weight, Precision(cfg.digits(r, anchor)), workers=cfg.workers)
                yield {"anchor": anchor.value, "weight": weight, "r": r, **rep.to_json()}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--r-max", type=int, default=8)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", help="write one JSON record per identity to this file")
    a = p.parse_args(argv)
    cfg = SweepConfig(r_max=a.r_max, workers=a.workers)
    start = time.perf_counter()
    records = list(sweep(cfg))
    for rec in records:
        flag = "PASS" if rec["pass"] else "FAIL"
        print(f"{flag} {rec['anchor']:<8} w={rec['weight']:+d} r={rec['r']:<2} "
              f"terms={rec['terms']:<6} {rec['method']:<5} {rec['identity']}")
    failed = sum(not r["pass"] for r in records)
    print(f"{len(records)} identities, {failed} failed, {time.perf_counter() - start:.2f} s  config={asdict(cfg)}")
    if a.json:
        with open(a.json, "w") as fh:
            for rec in records:
                fh.write(json.dumps(rec) + "\n")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())

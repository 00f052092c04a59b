#!/usr/bin/env python3
"""Terms needed to certify beta(r) or zeta(r) three ways, over a grid of digits.

Routes: the fast series identity, the raw alternating series, and the
Chebyshev-accelerated alternating series.  Rows past the term ceiling are
marked rather than computed.
"""

import argparse
import csv
import sys
from dataclasses import dataclass, field

from zetasums.cli import bench_convergence


@dataclass
class BenchConfig:
    orders: list = field(default_factory=lambda: [2, 3, 4])
    digits: list = field(default_factory=lambda: [10, 20, 30])
    max_terms: int = 10**6


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--orders", default="2,3,4")
    p.add_argument("--digits", default="10,20,30")
    p.add_argument("--max-terms", type=int, default=10**6)
    p.add_argument("--csv", help="also write rows to this CSV file")
    a = p.parse_args(argv)
    cfg = BenchConfig([int(x) for x in a.orders.split(",")], [int(x) for x in a.digits.split(",")], a.max_terms)
    rows = []
    for r in cfg.orders:
        for row in bench_convergence(r, cfg.digits, cfg.max_terms):
            rec = {"r": r, **row.to_json()}
            rows.append(rec)
            note = " (ceiling)" if rec["exceeded"] else ""
            print(f"r={r} {rec['constant']:<7} {rec['method']:<12} digits={rec['digits']:<3} "
                  f"terms={rec['terms']}{note}")
    if a.csv:
        with open(a.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Check the polygamma tables at 1/4, 3/4 and 1/2 against the Hurwitz evaluator.

For each order m the exact combination psi^(m)(1+x) + (-1)^m psi^(m)(1-x)
(plus 2*gamma at m = 0, where gamma cancels) is evaluated from its closed form
and compared with a direct Euler-Maclaurin evaluation of the polygammas.
"""

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from zetasums import Anchor, Precision, eval_closed_form, eval_polygamma, polygamma_combination
from zetasums.exactcore import EULER_GAMMA


@dataclass
class KolbigConfig:
    max_order: int = 10
    digits: int = 40


def check(cfg: KolbigConfig):
    prec = Precision(cfg.digits)
    rows = []
    for anchor in Anchor:
        x = anchor.x0
        for m in range(1, cfg.max_order + 1):
            direct = eval_polygamma(m, 1 + x, prec) + eval_polygamma(m, 1 - x, prec) * (-1) ** m
            form = polygamma_combination(m, anchor)
            assert form[EULER_GAMMA] == 0
            diff = direct - eval_closed_form(form, prec)
            # orders grow like m!; compare relative to the size of the values
            scale = max(abs(direct.mid_fraction), Fraction(1))
            ok = diff.contains_zero() and diff.radius / scale <= Fraction(1, 10 ** (cfg.digits - 5))
            rows.append((anchor.value, m, ok, float(diff.abs_upper())))
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-order", type=int, default=10)
    p.add_argument("--digits", type=int, default=40)
    a = p.parse_args(argv)
    rows = check(KolbigConfig(a.max_order, a.digits))
    for anchor, m, ok, err in rows:
        print(f"{'ok ' if ok else 'BAD'} {anchor:<8} m={m:<3} |diff| <= {err:.2e}")
    return 0 if all(r[2] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Scan the product identities over a family of random curves and print a
residual table; handy for eyeballing how the residuals behave as curve
geometry degrades.

    python scripts/identity_scan.py [genus] [count] [seed]
"""

import sys

import numpy as np

sys.path.insert(0, "src")

from hypertheta.curves import HyperellipticCurve
from hypertheta.identities import (
    check_guardia_all,
    check_lockhart,
    check_product_theorem,
)
from hypertheta.periods import BasisCalibrationError, PathError, period_matrix


def random_curve(rng, genus, min_sep):
    while True:
        n = 2 * genus + 1
        roots = rng.uniform(0.5, 2.0, n) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
        roots = sorted(roots, key=lambda z: z.real)
        sep = min(abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1 :])
        if sep >= min_sep:
            return HyperellipticCurve.from_roots(roots), sep


def main():
    genus = int(sys.argv[1]) if len(sys.argv) > 1 else 2
    count = int(sys.argv[2]) if len(sys.argv) > 2 else 8
    seed = int(sys.argv[3]) if len(sys.argv) > 3 else 0
    rng = np.random.default_rng(seed)
    print(f"{'sep':>8} {'dict':>10} {'guardia':>10} {'product':>10} {'lockhart':>10}")
    done = 0
    while done < count:
        curve, sep = random_curve(rng, genus, 0.15)
        try:
            pd = period_matrix(curve)
        except (BasisCalibrationError, PathError):
            print(f"{sep:8.3f} {'(basis construction failed, skipped)':>44}")
            continue
        g_rep = check_guardia_all(pd.tau)
        p_rep = check_product_theorem(pd.tau)
        l_rep = check_lockhart(pd)
        print(
            f"{sep:8.3f} {pd.path_log['dictionary_worst_residual']:10.2e} "
            f"{g_rep.relative_residual:10.2e} {p_rep.relative_residual:10.2e} "
            f"{l_rep.relative_residual:10.2e}"
        )
        done += 1


if __name__ == "__main__":
    main()

"""Infidelity against the Bell-like limit for every quartet member and cat state.

Prints one row per (family, alpha) together with infidelity / |alpha|^2,
which settles to the leading coefficient as alpha -> 0.
"""
import argparse
import csv
import sys

import numpy as np

from entlab.fock import LIMIT_TARGET, limit_convergence_scan


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha-start", type=float, default=1.0)
    ap.add_argument("--alpha-end", type=float, default=1e-3)
    ap.add_argument("--steps", type=int, default=13)
    args = ap.parse_args(argv)

    alphas = np.geomspace(args.alpha_start, args.alpha_end, args.steps)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["family", "target", "alpha", "infidelity", "ratio", "concurrence"])
    for which, target in LIMIT_TARGET.items():
        for row in limit_convergence_scan(which, alphas):
            out.writerow([which, target, repr(row.alpha), repr(row.infidelity),
                          repr(row.infidelity / row.alpha ** 2), repr(row.concurrence)])


if __name__ == "__main__":
    main()

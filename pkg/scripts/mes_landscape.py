"""Concurrence over the (theta, k) plane for fixed overlaps.

mu = k nu e^{i theta}.  The maximum C = 1 sits at k = 1 and the single
theta with p = -q* e^{i theta}; the script reports where the grid maximum
lands and optionally dumps the full grid as CSV.
"""
import argparse
import cmath
import csv
import math
import sys

import numpy as np

from entlab import OverlapState, concurrence_closed_form
from entlab.classification import principal_angle


def landscape(p, q, nk, ntheta):
    ks = np.linspace(0.25, 4.0, nk)
    thetas = np.linspace(-math.pi, math.pi, ntheta)
    grid = np.empty((nk, ntheta))
    for i, k in enumerate(ks):
        for j, t in enumerate(thetas):
            grid[i, j] = concurrence_closed_form(OverlapState(k * cmath.exp(1j * t), 1.0, p, q))
    return ks, thetas, grid


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=complex, default=0.4 * cmath.exp(0.7j))
    ap.add_argument("--q", type=complex, default=0.4 * cmath.exp(-1.1j))
    ap.add_argument("--nk", type=int, default=151)
    ap.add_argument("--ntheta", type=int, default=361)
    ap.add_argument("--csv", metavar="PATH")
    args = ap.parse_args(argv)

    ks, thetas, grid = landscape(args.p, args.q, args.nk, args.ntheta)
    i, j = np.unravel_index(np.argmax(grid), grid.shape)
    predicted = principal_angle(cmath.phase(-args.p / args.q.conjugate()))
    print(f"grid max C = {grid[i, j]:.12f} at k = {ks[i]:.4f}, theta = {thetas[j]:.4f}")
    print(f"predicted: k = 1, theta = {predicted:.4f}" if abs(abs(args.p) - abs(args.q)) < 1e-12
          else "predicted: no nonorthogonal MES (|p| != |q|)")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["k", "theta", "concurrence"])
            for a, k in enumerate(ks):
                for b, t in enumerate(thetas):
                    w.writerow([repr(float(k)), repr(float(t)), repr(float(grid[a, b]))])


if __name__ == "__main__":
    sys.exit(main())

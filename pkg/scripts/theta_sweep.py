#!/usr/bin/env python3
"""Sweep the Moebius fold angle: closed form, built polyline and derivative.

    python3 scripts/theta_sweep.py --d 0.01 --n 2 --points 25 > sweep.csv
"""
import argparse
import csv
import math
import sys

import numpy as np

from foldribbon.analysis import optimal_theta, rib_theta_derivative, ribbonlength
from foldribbon.constructions import build_moebius, moebius_rib_formula


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=float, default=0.01)
    ap.add_argument("--n", type=int, default=0)
    ap.add_argument("--points", type=int, default=25)
    ap.add_argument("--lo", type=float, default=0.3)
    ap.add_argument("--hi", type=float, default=2.8)
    args = ap.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["theta", "k", "formula", "polyline", "abs_diff", "limit_d0", "derivative"])
    for theta in np.linspace(args.lo, args.hi, args.points):
        dg = build_moebius(float(theta), args.d, args.n)
        f = moebius_rib_formula(theta, args.d, args.n)
        rib = ribbonlength(dg)
        w.writerow([f"{theta:.6f}", dg.params.k, f"{f:.9f}", f"{rib:.9f}",
                    f"{abs(f - rib):.2e}", f"{moebius_rib_formula(theta, 0.0, 0):.9f}",
                    f"{rib_theta_derivative(theta):.6f}"])
    opt = optimal_theta(1e-9)
    print(f"# optimum theta={opt.theta:.12f} (pi/3={math.pi / 3:.12f}) "
          f"value={opt.value:.12f} (3*sqrt3={3 * math.sqrt(3):.12f})", file=sys.stderr)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Rebuild every family, compare polyline length to the closed forms, and
write the torus comparison table plus reference constants.

    python3 scripts/reproduce_bounds.py --out results/
"""
import argparse
import math
from pathlib import Path

from foldribbon.analysis import analyze, comparison_table, reference_constants
from foldribbon.constructions import build, clasp_distances
from foldribbon.export import table_csv


def main():
    ap = argparse.ArgumentParser(description="reproduce ribbonlength bounds")
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--d", type=float, default=1e-3)
    ap.add_argument("--q-max", type=int, default=1001)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    print(f"{'family':<12}{'n':>4}{'k':>7}{'formula':>16}{'polyline':>16}{'d->0':>12}")
    for family in ("moebius", "torus2q", "twist-odd", "twist-even"):
        for n in (1, 5, 20):
            rep = analyze(build(family, d=args.d, n=n))
            print(f"{family:<12}{n:>4}{rep.params.k:>7}{rep.formula_value:>16.10f}"
                  f"{rep.oracle_value:>16.10f}{rep.limit_d_zero:>12.6f}")

    c = clasp_distances()
    print(f"\nclasp: dK(M,P)={c.dK_MP:.12f}  d(P,M)={c.d_PM:.12f}  d(J,T)={c.d_JT:.12f}"
          f"  [1/(2 sqrt3)={1 / (2 * math.sqrt(3)):.12f}]")

    rows = comparison_table(range(3, args.q_max + 1, 2))
    (args.out / "torus_bounds.csv").write_text(table_csv(rows))
    beaten = [r.q for r in rows if r.kny_bound < r.construction_bound]
    print(f"\n{len(rows)} torus rows -> {args.out / 'torus_bounds.csv'}; "
          f"2.5 Cr + 1 is smaller only for q in {beaten}")

    print("\nreference constants:")
    for ref in reference_constants():
        print(f"  {ref.name:<28}{ref.value:>12.6f}  {ref.citation}")


if __name__ == "__main__":
    main()

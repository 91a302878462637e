#!/usr/bin/env python3
"""Write SVG diagrams and crease patterns for each family."""
import argparse
import math
from pathlib import Path

from foldribbon.constructions import build
from foldribbon.export import RenderOptions, crease_pattern, render_crease, render_diagram


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("figures"))
    ap.add_argument("--d", type=float, default=0.08)
    ap.add_argument("--n", type=int, default=1)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    opts = RenderOptions()
    cases = {
        "moebius": dict(family="moebius", n=args.n),
        "moebius_right_angle": dict(family="moebius", theta=math.pi / 2, n=0),
        "torus": dict(family="torus2q", n=args.n),
        "twist_odd": dict(family="twist-odd", n=args.n),
        "twist_even": dict(family="twist-even", n=args.n),
    }
    for name, kw in cases.items():
        dg = build(d=args.d, **kw)
        (args.out / f"{name}.svg").write_text(render_diagram(dg, opts))
        (args.out / f"{name}_crease.svg").write_text(render_crease(crease_pattern(dg), opts))
        print(f"{name}: {dg.fold_count} folds")


if __name__ == "__main__":
    main()

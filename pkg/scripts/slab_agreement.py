#!/usr/bin/env python3
"""Quantify how fast the thin film model approaches the exact slab.

For each thickness the script reports the worst relative distance
between the model root (local Drude penetration) and the exact slab
mode over a wavevector grid.  Halving the thickness should shrink the
gap by a large factor while the film stays well inside the skin depth,
which is the quickest way to see where the thin film picture is safe.
"""

import argparse

import numpy as np

from filmplasmon import DrudeG, FilmParams, solve_point, tmm_solve


def parse_args():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument(
        "--thicknesses", type=float, nargs="+", default=[0.1, 0.05, 0.025]
    )
    p.add_argument("--k-min", type=float, default=0.05)
    p.add_argument("--k-max", type=float, default=0.5)
    p.add_argument("--k-steps", type=int, default=20)
    p.add_argument("--nu", type=float, default=0.0)
    return p.parse_args()


def main():
    args = parse_args()
    print(f"{'D':>8}  {'max rel gap':>12}  {'at k':>8}")
    previous = None
    for d in args.thicknesses:
        film = FilmParams(thickness=d, g_model=DrudeG(), nu=args.nu)
        worst, where = 0.0, float("nan")
        for k in np.linspace(args.k_min, args.k_max, args.k_steps):
            k = float(k)
            pt = solve_point(k, film)
            seed = None if args.nu == 0.0 else pt.omega
            mode = tmm_solve(k, d, args.nu, seed=seed)
            rel = abs(pt.omega - mode.omega) / abs(mode.omega)
            if rel > worst:
                worst, where = rel, k
        note = "" if previous is None else f"  ({previous / worst:.1f}x down)"
        print(f"{d:8g}  {worst:12.3e}  {where:8.3f}{note}")
        previous = worst

    k0, d0 = 0.2, 0.05
    pt = solve_point(k0, FilmParams(thickness=d0, g_model=DrudeG()))
    mode = tmm_solve(k0, d0)
    rel = abs(pt.omega - mode.omega) / abs(mode.omega)
    print(
        f"\nreference point K={k0}, D={d0}: model {pt.omega.real:.12f}, "
        f"slab {mode.omega.real:.12f}, rel diff {rel:.3e}"
    )


if __name__ == "__main__":
    main()

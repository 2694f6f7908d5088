#!/usr/bin/env python3
"""Trace bound mode dispersion curves for several film thicknesses.

Writes one CSV per thickness (and optionally a PNG overlay) so the
flattening of the branch with growing K*D is easy to see.

Example:
    python3 scripts/dispersion_curves.py --out-dir results --plot
"""

import argparse
import csv
import pathlib

from filmplasmon import (
    DrudeG,
    FilmParams,
    SweepRequest,
    ZeroG,
    closed_form_omega,
    sweep_dispersion,
)


def parse_args():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument(
        "--thicknesses", type=float, nargs="+", default=[0.05, 0.1, 0.5, 1.0],
        help="film thicknesses in units of c/omega_p",
    )
    p.add_argument("--k-min", type=float, default=0.02)
    p.add_argument("--k-max", type=float, default=5.0)
    p.add_argument("--k-steps", type=int, default=120)
    p.add_argument("--gmodel", choices=["zero", "drude"], default="zero")
    p.add_argument("--nu", type=float, default=0.0)
    p.add_argument("--out-dir", default="results")
    p.add_argument(
        "--plot", action="store_true",
        help="also write dispersion.png (needs matplotlib)",
    )
    return p.parse_args()


def main():
    args = parse_args()
    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    curves = {}
    for d in args.thicknesses:
        model = ZeroG() if args.gmodel == "zero" else DrudeG()
        film = FilmParams(thickness=d, g_model=model, nu=args.nu)
        req = SweepRequest(
            k_min=args.k_min, k_max=args.k_max, n_points=args.k_steps,
            film=film, grid="log",
        )
        res = sweep_dispersion(req)
        rows = [
            (pt.k, pt.omega.real, pt.omega.imag, closed_form_omega(pt.k, d))
            for pt in res.points
        ]
        curves[d] = rows
        path = out / f"dispersion_d{d:g}.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["k", "omega_re", "omega_im", "closed_form"])
            writer.writerows(rows)
        print(f"{path}: {len(rows)} points, {len(res.failures)} failures")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(6.0, 4.5))
        for d, rows in sorted(curves.items()):
            ax.plot([r[0] for r in rows], [r[1] for r in rows], label=f"D = {d:g}")
        any_rows = next(iter(curves.values()))
        ks = [r[0] for r in any_rows]
        ax.plot(ks, ks, "k--", lw=0.8, label="light line")
        ax.set_xlabel("K  (units of omega_p/c)")
        ax.set_ylabel("Omega  (units of omega_p)")
        ax.set_xscale("log")
        ax.legend()
        fig.tight_layout()
        target = out / "dispersion.png"
        fig.savefig(target, dpi=150)
        print(target)


if __name__ == "__main__":
    main()

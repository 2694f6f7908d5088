"""Command line interface.

Three subcommands: ``solve`` for one wavevector, ``sweep`` for a
dispersion curve, ``validate`` for the built-in numerical check suites.
All quantities on the command line are dimensionless (plasma frequency
units); pass ``--omega-p`` to append physical unit echo columns.

Exit codes: 0 success, 1 usage or input error, 2 the physics failed to
converge (or a validation suite failed), 3 file I/O error.

Output is deterministic: floats are rendered in scientific notation with
12 significant digits, rows follow the wavevector grid, and JSON key
order is fixed, so equal invocations produce byte identical bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from typing import Optional, Sequence

import numpy as np

from .core import LIGHT_SPEED_GAUSSIAN, LIGHT_SPEED_SI, FilmParams, Scaling
from .dispersion import (
    DispersionPoint,
    closed_form_omega,
    dispersion_residual,
    film_impedance,
    small_k_omega,
    vacuum_impedance,
)
from .errors import ConvergenceError, FilmPlasmonError
from .gmodel import ConstantG, DrudeG, ZeroG, load_g_table
from .rootfind import RootConfig, solve_point
from .slab import tmm_solve
from .sweep import SweepRequest, SweepResult, sweep_dispersion


class UsageError(Exception):
    """Bad flags or config content; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise UsageError(message)


# ---------------------------------------------------------------------------
# flag definitions and config file merging

_GMODELS = ("zero", "constant", "drude", "table")
_COMMON_KEYS = (
    "d",
    "nu",
    "gmodel",
    "g0-re",
    "g0-im",
    "g-table",
    "tol",
    "max-iter",
    "output",
    "out",
    "omega-p",
    "unit-system",
)
_CONFIG_KEYS = {
    "solve": ("k", "seed-re", "seed-im") + _COMMON_KEYS,
    "sweep": ("k-min", "k-max", "k-steps", "grid", "compare-tmm") + _COMMON_KEYS,
}

_FLOAT_KEYS = {
    "k",
    "k-min",
    "k-max",
    "d",
    "nu",
    "g0-re",
    "g0-im",
    "seed-re",
    "seed-im",
    "tol",
    "omega-p",
}
_INT_KEYS = {"k-steps", "max-iter"}
_BOOL_KEYS = {"compare-tmm"}
_PATH_KEYS = {"g-table", "out"}
_CHOICE_KEYS = {
    "gmodel": _GMODELS,
    "grid": ("linear", "log"),
    "output": ("csv", "json"),
    "unit-system": ("gaussian", "si"),
}


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--d", type=float, help="film thickness in units of c/omega_p")
    p.add_argument("--nu", type=float, help="collision rate in units of omega_p (default 0)")
    p.add_argument("--gmodel", choices=_GMODELS, help="field penetration model (default zero)")
    p.add_argument("--g0-re", type=float, help="Re(g) for --gmodel constant")
    p.add_argument("--g0-im", type=float, help="Im(g) for --gmodel constant (default 0)")
    p.add_argument(
        "--g-table", metavar="PATH", help="CSV table for --gmodel table (header omega,g_re,g_im)"
    )
    p.add_argument("--tol", type=float, help="residual tolerance on |F| (default 1e-12)")
    p.add_argument("--max-iter", type=int, help="Newton iteration budget (default 50)")
    p.add_argument("--output", choices=("csv", "json"), help="output format (default csv)")
    p.add_argument("--out", metavar="PATH", help="write output to a file instead of stdout")
    p.add_argument(
        "--omega-p", type=float, help="plasma frequency in rad/s; appends physical unit columns"
    )
    p.add_argument(
        "--unit-system",
        choices=("gaussian", "si"),
        help="length/time units for --omega-p (default gaussian)",
    )
    p.add_argument(
        "--config", metavar="PATH", help="JSON config file; explicit flags override its values"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="filmplasmon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_solve = sub.add_parser("solve", help="solve the dispersion relation at one wavevector")
    p_solve.add_argument("--k", type=float, help="wavevector in units of omega_p/c")
    p_solve.add_argument("--seed-re", type=float, help="Re of the Newton starting frequency")
    p_solve.add_argument("--seed-im", type=float, help="Im of the Newton starting frequency")
    _add_common_flags(p_solve)

    p_sweep = sub.add_parser("sweep", help="trace a dispersion curve over a wavevector grid")
    p_sweep.add_argument("--k-min", type=float, help="first wavevector (> 0)")
    p_sweep.add_argument("--k-max", type=float, help="last wavevector (> k-min)")
    p_sweep.add_argument("--k-steps", type=int, help="number of grid points (>= 2)")
    p_sweep.add_argument("--grid", choices=("linear", "log"), help="grid spacing (default linear)")
    p_sweep.add_argument(
        "--compare-tmm",
        action="store_const",
        const=True,
        help="also solve the exact slab problem and append comparison columns",
    )
    _add_common_flags(p_sweep)

    p_val = sub.add_parser("validate", help="run the built-in numerical check suites")
    p_val.add_argument(
        "--suite",
        choices=("closedform", "expansion", "impedance", "tmm", "all"),
        default="all",
        help="which suite to run (default all)",
    )
    return parser


def _load_config_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"config {path}: invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise UsageError(f"config {path}: top level must be a JSON object")
    return obj


def _cast_config_value(key: str, value):
    if key in _FLOAT_KEYS:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise UsageError(f"config: {key} must be a number, got {value!r}")
        return float(value)
    if key in _INT_KEYS:
        if isinstance(value, bool) or not isinstance(value, int):
            raise UsageError(f"config: {key} must be an integer, got {value!r}")
        return value
    if key in _BOOL_KEYS:
        if not isinstance(value, bool):
            raise UsageError(f"config: {key} must be true or false, got {value!r}")
        return value
    if key in _PATH_KEYS:
        if not isinstance(value, str):
            raise UsageError(f"config: {key} must be a string path, got {value!r}")
        return value
    choices = _CHOICE_KEYS[key]
    if value not in choices:
        raise UsageError(f"config: {key} must be one of {choices}, got {value!r}")
    return value


def _merge_values(args: argparse.Namespace, command: str) -> dict:
    """Combine flags and config file; flags win, unknown config keys fail."""
    file_values = _load_config_file(args.config) if args.config else {}
    allowed = _CONFIG_KEYS[command]
    for key in file_values:
        if key not in allowed:
            raise UsageError(f"config: unknown key {key!r} for command {command!r}")
    vals = {}
    for key in allowed:
        cli = getattr(args, key.replace("-", "_"))
        if cli is not None:
            vals[key] = cli
        elif key in file_values:
            vals[key] = _cast_config_value(key, file_values[key])
        else:
            vals[key] = None
    return vals


def _build_film(vals: dict) -> FilmParams:
    if vals["d"] is None:
        raise UsageError("--d is required")
    nu = vals["nu"] if vals["nu"] is not None else 0.0
    name = vals["gmodel"] or "zero"

    def reject(*keys: str) -> None:
        for key in keys:
            if vals[key] is not None:
                raise UsageError(f"--{key} does not apply to --gmodel {name}")

    if name == "zero":
        reject("g0-re", "g0-im", "g-table")
        model = ZeroG()
    elif name == "drude":
        reject("g0-re", "g0-im", "g-table")
        model = DrudeG()
    elif name == "constant":
        reject("g-table")
        if vals["g0-re"] is None:
            raise UsageError("--g0-re is required for --gmodel constant")
        model = ConstantG(complex(vals["g0-re"], vals["g0-im"] or 0.0))
    else:
        reject("g0-re", "g0-im")
        if vals["g-table"] is None:
            raise UsageError("--g-table is required for --gmodel table")
        model = load_g_table(vals["g-table"])
    return FilmParams(thickness=vals["d"], g_model=model, nu=nu)


def _build_root_config(vals: dict) -> RootConfig:
    kwargs = {}
    if vals["tol"] is not None:
        kwargs["tol_residual"] = vals["tol"]
    if vals["max-iter"] is not None:
        kwargs["max_iter"] = vals["max-iter"]
    return RootConfig(**kwargs)


def _build_scaling(vals: dict) -> Optional[Scaling]:
    if vals["omega-p"] is None:
        return None
    speed = LIGHT_SPEED_SI if vals["unit-system"] == "si" else LIGHT_SPEED_GAUSSIAN
    return Scaling(plasma_frequency=vals["omega-p"], light_speed=speed)


# ---------------------------------------------------------------------------
# deterministic rendering

_BASE_COLUMNS = (
    "k",
    "omega_re",
    "omega_im",
    "alpha_re",
    "alpha_im",
    "g_re",
    "g_im",
    "residual_abs",
    "iterations",
    "converged",
)
_TMM_COLUMNS = ("omega_tmm_re", "omega_tmm_im", "rel_diff")
_PHYS_COLUMNS = ("k_phys", "omega_phys_re", "omega_phys_im")


def _fmt(x: float) -> str:
    """Scientific notation with 12 significant digits."""
    return f"{x:.11e}"


def _quant(x: float) -> float:
    """Quantize to the same 12 significant digits used in CSV."""
    return float(_fmt(x))


def _point_csv_cells(pt: DispersionPoint) -> list:
    return [
        _fmt(pt.k),
        _fmt(pt.omega.real),
        _fmt(pt.omega.imag),
        _fmt(pt.alpha.real),
        _fmt(pt.alpha.imag),
        _fmt(pt.g.real),
        _fmt(pt.g.imag),
        _fmt(pt.residual_abs),
        str(pt.iterations),
        "true" if pt.converged else "false",
    ]


def _point_json_fields(pt: DispersionPoint) -> dict:
    return {
        "k": _quant(pt.k),
        "omega_re": _quant(pt.omega.real),
        "omega_im": _quant(pt.omega.imag),
        "alpha_re": _quant(pt.alpha.real),
        "alpha_im": _quant(pt.alpha.imag),
        "g_re": _quant(pt.g.real),
        "g_im": _quant(pt.g.imag),
        "residual_abs": _quant(pt.residual_abs),
        "iterations": pt.iterations,
        "converged": pt.converged,
    }


def _phys_triplet(pt: DispersionPoint, scaling: Scaling, thickness: float) -> tuple:
    _, k_phys, omega_phys = scaling.denormalize(thickness, pt.k, pt.omega)
    return k_phys, omega_phys.real, omega_phys.imag


def emit_csv(result: SweepResult, scaling: Optional[Scaling] = None) -> str:
    """Render a sweep as CSV (header plus one row per converged point)."""
    columns = list(_BASE_COLUMNS)
    if result.tmm is not None:
        columns += _TMM_COLUMNS
    if scaling is not None:
        columns += _PHYS_COLUMNS
    thickness = result.request.film.thickness
    lines = [",".join(columns)]
    for i, pt in enumerate(result.points):
        cells = _point_csv_cells(pt)
        if result.tmm is not None:
            mode = result.tmm[i]
            if mode is None:
                cells += ["nan", "nan", "nan"]
            else:
                rel = abs(pt.omega - mode.omega) / abs(mode.omega)
                cells += [_fmt(mode.omega.real), _fmt(mode.omega.imag), _fmt(rel)]
        if scaling is not None:
            cells += [_fmt(v) for v in _phys_triplet(pt, scaling, thickness)]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def emit_json(result: SweepResult, scaling: Optional[Scaling] = None) -> str:
    """Render a sweep as a JSON document with metadata, points, failures."""
    thickness = result.request.film.thickness
    points = []
    for i, pt in enumerate(result.points):
        fields = _point_json_fields(pt)
        if result.tmm is not None:
            mode = result.tmm[i]
            if mode is None:
                fields["omega_tmm_re"] = None
                fields["omega_tmm_im"] = None
                fields["rel_diff"] = None
            else:
                rel = abs(pt.omega - mode.omega) / abs(mode.omega)
                fields["omega_tmm_re"] = _quant(mode.omega.real)
                fields["omega_tmm_im"] = _quant(mode.omega.imag)
                fields["rel_diff"] = _quant(rel)
        if scaling is not None:
            k_phys, w_re, w_im = _phys_triplet(pt, scaling, thickness)
            fields["k_phys"] = _quant(k_phys)
            fields["omega_phys_re"] = _quant(w_re)
            fields["omega_phys_im"] = _quant(w_im)
        points.append(fields)
    obj = {
        "metadata": result.metadata,
        "points": points,
        "failures": [{"k": _quant(f.k), "reason": f.reason} for f in result.failures],
    }
    return json.dumps(obj, indent=2) + "\n"


def _render_single_point(
    pt: DispersionPoint, fmt: str, scaling: Optional[Scaling], thickness: float
) -> str:
    if fmt == "csv":
        columns = list(_BASE_COLUMNS)
        cells = _point_csv_cells(pt)
        if scaling is not None:
            columns += _PHYS_COLUMNS
            cells += [_fmt(v) for v in _phys_triplet(pt, scaling, thickness)]
        return ",".join(columns) + "\n" + ",".join(cells) + "\n"
    fields = _point_json_fields(pt)
    if scaling is not None:
        k_phys, w_re, w_im = _phys_triplet(pt, scaling, thickness)
        fields["k_phys"] = _quant(k_phys)
        fields["omega_phys_re"] = _quant(w_re)
        fields["omega_phys_im"] = _quant(w_im)
    return json.dumps(fields, indent=2) + "\n"


def _write_output(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError:
        # Do not leave a partial file behind.
        try:
            os.unlink(path)
        except OSError:
            pass
        raise


# ---------------------------------------------------------------------------
# commands

def _cmd_solve(args: argparse.Namespace) -> int:
    vals = _merge_values(args, "solve")
    if vals["k"] is None:
        raise UsageError("--k is required")
    if not (math.isfinite(vals["k"]) and vals["k"] > 0.0):
        raise UsageError("k must be positive")
    film = _build_film(vals)
    config = _build_root_config(vals)
    scaling = _build_scaling(vals)
    if vals["seed-re"] is not None:
        seed = complex(vals["seed-re"], vals["seed-im"] or 0.0)
    elif vals["seed-im"] is not None:
        raise UsageError("--seed-im requires --seed-re")
    else:
        seed = None
    point = solve_point(vals["k"], film, seed=seed, config=config)
    text = _render_single_point(
        point, vals["output"] or "csv", scaling, film.thickness
    )
    _write_output(text, vals["out"])
    return 0 if point.converged else 2


def _cmd_sweep(args: argparse.Namespace) -> int:
    vals = _merge_values(args, "sweep")
    for key in ("k-min", "k-max", "k-steps"):
        if vals[key] is None:
            raise UsageError(f"--{key} is required")
    film = _build_film(vals)
    config = _build_root_config(vals)
    scaling = _build_scaling(vals)
    request = SweepRequest(
        k_min=vals["k-min"],
        k_max=vals["k-max"],
        n_points=vals["k-steps"],
        film=film,
        grid=vals["grid"] or "linear",
        config=config,
        compare_tmm=bool(vals["compare-tmm"]),
    )
    result = sweep_dispersion(request)
    if (vals["output"] or "csv") == "csv":
        text = emit_csv(result, scaling)
    else:
        text = emit_json(result, scaling)
    _write_output(text, vals["out"])
    return 0 if not result.failures else 2


# ---------------------------------------------------------------------------
# validation suites

def _suite_closedform() -> list:
    film_grid = (0.01, 0.1, 0.5, 1.0)
    k_grid = np.geomspace(0.01, 5.0, 50)
    worst = 0.0
    worst_at = ""
    all_converged = True
    start = time.perf_counter()
    for d in film_grid:
        film = FilmParams(thickness=d, g_model=ZeroG())
        for k in k_grid:
            k = float(k)
            pt = solve_point(k, film)
            if not pt.converged:
                all_converged = False
                worst_at = f"k={k:.5g}, d={d}"
                break
            rel = abs(pt.omega.real - closed_form_omega(k, d)) / closed_form_omega(k, d)
            if rel > worst:
                worst, worst_at = rel, f"k={k:.5g}, d={d}"
    elapsed = time.perf_counter() - start
    ok = all_converged and worst <= 1e-10
    detail = (
        f"max rel err {worst:.3e} at {worst_at}, {elapsed:.2f} s"
        if all_converged
        else f"solver failed at {worst_at}"
    )
    return [("screened film roots match the closed form to 1e-10", ok, detail)]


def _suite_expansion() -> list:
    worst = 0.0
    for d in (0.01, 0.1, 0.5, 1.0):
        for kd in np.linspace(1e-3, 0.5, 40):
            k = float(kd) / d
            diff = abs(closed_form_omega(k, d) - small_k_omega(k, d))
            bound = 0.03 * k * float(kd) ** 4
            worst = max(worst, diff / bound)
    return [
        (
            "long wavelength expansion within the quartic error bound",
            worst <= 1.0,
            f"max |difference|/bound = {worst:.3f}",
        )
    ]


def _suite_impedance() -> list:
    rng = np.random.default_rng(20240817)
    g_choices = (0.0 + 0.0j, -1.0 / 3.0 + 0.0j, 0.2 - 0.1j)
    models = {g: ConstantG(g) for g in g_choices}
    worst = 0.0
    n = 10_000
    for i in range(n):
        radius = rng.uniform(0.01, 2.0)
        phase = rng.uniform(0.0, 2.0 * math.pi)
        omega = radius * complex(math.cos(phase), math.sin(phase))
        k = rng.uniform(0.01, 5.0)
        d = rng.uniform(0.01, 1.0)
        g = g_choices[i % 3]
        z_out = vacuum_impedance(omega, k)
        z_in = film_impedance(omega, k, d, g)
        lhs = omega * (z_out - z_in)
        film_params = FilmParams(thickness=d, g_model=models[g])
        rhs = 1j * dispersion_residual(omega, k, film_params)
        # Both sides vanish together at a mode, so the error is measured
        # against the magnitude of the impedance terms, not against the
        # (possibly tiny) difference itself.
        scale = max(abs(lhs), abs(rhs), abs(omega) * (abs(z_out) + abs(z_in)))
        worst = max(worst, abs(lhs - rhs) / scale)
    return [
        (
            "impedance mismatch equals the pole free residual to 1e-13",
            worst <= 1e-13,
            f"max rel err {worst:.3e} over {n} samples",
        )
    ]


def _suite_tmm() -> list:
    checks = []
    gaps = {}
    k_grid = np.linspace(0.05, 0.5, 20)
    for d in (0.1, 0.05, 0.025):
        film = FilmParams(thickness=d, g_model=DrudeG())
        worst = 0.0
        for k in k_grid:
            k = float(k)
            pt = solve_point(k, film)
            mode = tmm_solve(k, d)
            worst = max(worst, abs(pt.omega - mode.omega) / abs(mode.omega))
        gaps[d] = worst
    checks.append(
        (
            "Drude model roots track the exact slab roots to 1e-2",
            max(gaps.values()) <= 1e-2,
            f"max rel gap {gaps[0.1]:.3e} (D=0.1), {gaps[0.05]:.3e} (D=0.05), "
            f"{gaps[0.025]:.3e} (D=0.025)",
        )
    )
    checks.append(
        (
            "model error shrinks as the film gets thinner",
            gaps[0.025] < gaps[0.05] < gaps[0.1],
            f"{gaps[0.025]:.3e} < {gaps[0.05]:.3e} < {gaps[0.1]:.3e}",
        )
    )
    worst_cf = 0.0
    for d in (0.025, 0.05, 0.1):
        for k in np.linspace(0.05, 0.3, 10):
            k = float(k)
            mode = tmm_solve(k, d)
            worst_cf = max(
                worst_cf, abs(mode.omega - closed_form_omega(k, d)) / abs(mode.omega)
            )
    checks.append(
        (
            "screened closed form tracks the slab root to 2e-2",
            worst_cf <= 2e-2,
            f"max rel gap {worst_cf:.3e} for K <= 0.3, D <= 0.1",
        )
    )
    return checks


_SUITES = {
    "closedform": _suite_closedform,
    "expansion": _suite_expansion,
    "impedance": _suite_impedance,
    "tmm": _suite_tmm,
}


def _cmd_validate(args: argparse.Namespace) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    all_ok = True
    for name in names:
        for label, ok, detail in _SUITES[name]():
            all_ok = all_ok and ok
            print(f"{'PASS' if ok else 'FAIL'}  {name}: {label}  [{detail}]")
    print("all validation checks passed" if all_ok else "validation FAILED")
    return 0 if all_ok else 2


# ---------------------------------------------------------------------------

def main(argv: Optional[Sequence[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_validate(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FilmPlasmonError as exc:
        # Domain, parse, bracket and state errors are caller mistakes.
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()

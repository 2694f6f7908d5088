"""Wavevector sweeps along a dispersion branch.

A sweep walks the wavevector grid in ascending order.  The first point
leans on the analytic long wavelength seed; later points are seeded by
linear extrapolation from the last two converged roots, which keeps the
solver on one branch across the grid.  A failed point is recorded with
its reason and the continuation resumes from the last good root, so a
partial curve is still usable; converged points and failures partition
the grid exactly.  The branch continuity guard (consecutive roots moving
no faster than |dOmega/dk| of order one) is checked in the test suite
rather than enforced here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import FilmParams
from .dispersion import DispersionPoint
from .errors import ConvergenceError, DomainError, FilmPlasmonError, StateError
from .gmodel import ConstantG, TabulatedG
from .rootfind import RootConfig, solve_point
from .slab import SlabMode, tmm_solve

_GRIDS = ("linear", "log")


@dataclass(frozen=True)
class SweepRequest:
    """What to sweep: the wavevector grid, the film, solver knobs."""

    k_min: float
    k_max: float
    n_points: int
    film: FilmParams
    grid: str = "linear"
    config: RootConfig = field(default_factory=RootConfig)
    compare_tmm: bool = False

    def __post_init__(self) -> None:
        if not (math.isfinite(self.k_min) and self.k_min > 0.0):
            raise DomainError(f"k_min must be positive, got {self.k_min!r}")
        if not (math.isfinite(self.k_max) and self.k_max > self.k_min):
            raise DomainError(
                f"k_max must exceed k_min, got k_min = {self.k_min!r}, "
                f"k_max = {self.k_max!r}"
            )
        if self.n_points < 2:
            raise DomainError(f"n_points must be at least 2, got {self.n_points!r}")
        if self.grid not in _GRIDS:
            raise DomainError(f"grid must be one of {_GRIDS}, got {self.grid!r}")

    def k_values(self) -> np.ndarray:
        if self.grid == "log":
            return np.geomspace(self.k_min, self.k_max, self.n_points)
        return np.linspace(self.k_min, self.k_max, self.n_points)


@dataclass(frozen=True)
class SweepFailure:
    """A grid point the solver could not certify."""

    k: float
    reason: str


@dataclass
class SweepResult:
    """Outcome of a sweep: converged points, failures, optional slab data.

    ``tmm`` is parallel to ``points`` when the request asked for the
    comparison; entries are None where the slab solver itself failed.
    """

    request: SweepRequest
    points: tuple[DispersionPoint, ...]
    failures: tuple[SweepFailure, ...]
    tmm: Optional[tuple[Optional[SlabMode], ...]] = None
    metadata: dict = field(default_factory=dict)


@dataclass(frozen=True)
class TmmComparison:
    """Model root against the exact slab root at one wavevector."""

    k: float
    omega: complex
    omega_tmm: complex
    rel_diff: float


def _request_metadata(request: SweepRequest) -> dict:
    from . import __version__

    film = request.film
    cfg = request.config
    md: dict = {
        "version": __version__,
        "k_min": request.k_min,
        "k_max": request.k_max,
        "n_points": request.n_points,
        "grid": request.grid,
        "thickness": film.thickness,
        "nu": film.nu,
        "g_model": film.g_model.tag,
        "tol_residual": cfg.tol_residual,
        "max_iter": cfg.max_iter,
        "compare_tmm": request.compare_tmm,
    }
    if isinstance(film.g_model, ConstantG):
        md["g0_re"] = film.g_model.g0.real
        md["g0_im"] = film.g_model.g0.imag
    elif isinstance(film.g_model, TabulatedG):
        md["table_knots"] = len(film.g_model.omega_knots)
        md["table_omega_min"] = film.g_model.omega_knots[0]
        md["table_omega_max"] = film.g_model.omega_knots[-1]
    return md


def sweep_dispersion(request: SweepRequest) -> SweepResult:
    """Solve the dispersion relation on the requested wavevector grid.

    Raises :class:`~filmplasmon.errors.ConvergenceError` only when every
    single point fails; otherwise failures are reported in the result so
    callers can decide what a partial branch is worth.
    """
    film = request.film
    cfg = request.config

    points: list[DispersionPoint] = []
    failures: list[SweepFailure] = []
    trail: list[DispersionPoint] = []  # last two converged points
    for k in request.k_values():
        k = float(k)
        # First point: the solver's own analytic seed.  After that,
        # linear extrapolation along the branch, or the last good root
        # while only one exists.  (Bracket eligible films ignore the
        # seed unless their bracket fails.)
        if len(trail) >= 2:
            p0, p1 = trail[-2], trail[-1]
            seed = p1.omega + (p1.omega - p0.omega) * (k - p1.k) / (p1.k - p0.k)
        elif len(trail) == 1:
            seed = trail[-1].omega
        else:
            seed = None
        try:
            pt = solve_point(k, film, seed=seed, config=cfg)
        except FilmPlasmonError as exc:
            failures.append(SweepFailure(k, f"{type(exc).__name__}: {exc}"))
            continue
        if pt.converged:
            points.append(pt)
            trail = (trail + [pt])[-2:]
        else:
            failures.append(
                SweepFailure(
                    k,
                    f"did not converge: |F| = {pt.residual_abs:.3e} "
                    f"after {pt.iterations} iterations",
                )
            )
    if not points:
        first = failures[0] if failures else None
        detail = f"; first failure at k = {first.k}: {first.reason}" if first else ""
        raise ConvergenceError(f"no point of the sweep converged{detail}")

    tmm: Optional[tuple[Optional[SlabMode], ...]] = None
    if request.compare_tmm:
        slabs: list[Optional[SlabMode]] = []
        for pt in points:
            slab_seed = None if film.nu == 0.0 else pt.omega
            try:
                slabs.append(
                    tmm_solve(pt.k, film.thickness, film.nu, seed=slab_seed, config=cfg)
                )
            except (ConvergenceError, DomainError):
                slabs.append(None)
        tmm = tuple(slabs)

    return SweepResult(
        request=request,
        points=tuple(points),
        failures=tuple(failures),
        tmm=tmm,
        metadata=_request_metadata(request),
    )


def compare_tmm(result: SweepResult) -> tuple[TmmComparison, ...]:
    """Relative distance between model roots and exact slab roots.

    Requires the sweep to have been run with ``compare_tmm``; otherwise
    raises :class:`~filmplasmon.errors.StateError`.  Points whose slab
    solve failed carry no comparison and are skipped.  Rows follow the
    points, so they come out sorted by k.
    """
    if result.tmm is None:
        raise StateError(
            "sweep result carries no slab data; rerun with compare_tmm enabled"
        )
    rows: list[TmmComparison] = []
    for pt, mode in zip(result.points, result.tmm):
        if mode is None:
            continue
        denom = abs(mode.omega)
        rel = abs(pt.omega - mode.omega) / denom if denom > 0.0 else math.inf
        rows.append(TmmComparison(pt.k, pt.omega, mode.omega, rel))
    return tuple(rows)

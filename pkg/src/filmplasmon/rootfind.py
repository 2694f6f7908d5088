"""Root finding for the dispersion residual.

Two workhorses.  A damped Newton iteration with a central difference
derivative handles complex roots and arbitrary penetration models.  For
lossless configurations whose residual is real analytic below the light
line (perfect screening and the local Drude model), plain bisection on
(0, K) is both faster and certifiable, so :func:`solve_point` tries that
first and falls back to Newton when no bracket is available.

Bisection runs to floating point exhaustion when needed: once the
bracket is one ulp wide the sign change pins the root to machine
resolution even if cancellation keeps |F| above the residual tolerance.
Such results carry ``certified`` True but are only marked ``converged``
when |F| actually meets the tolerance, so the convergence flag keeps one
meaning everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .core import FilmParams, decay_constant
from .dispersion import (
    DispersionPoint,
    closed_form_omega,
    dispersion_residual,
    small_k_omega,
)
from .errors import BracketError, DomainError, SingularityError
from .gmodel import DrudeG, ZeroG


@dataclass(frozen=True)
class RootConfig:
    """Tunables shared by the root finders.

    ``tol_residual`` is the convergence test on |F|.  ``max_iter`` bounds
    Newton updates; bisection is self terminating and ignores it.
    ``fd_step_rel`` scales the central difference step and
    ``damping_halvings`` bounds the step halving line search.
    """

    tol_residual: float = 1e-12
    max_iter: int = 50
    fd_step_rel: float = 1e-7
    damping_halvings: int = 20

    def __post_init__(self) -> None:
        if not (math.isfinite(self.tol_residual) and self.tol_residual > 0.0):
            raise DomainError(f"tol_residual must be positive, got {self.tol_residual!r}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be at least 1, got {self.max_iter!r}")
        if not (math.isfinite(self.fd_step_rel) and self.fd_step_rel > 0.0):
            raise DomainError(f"fd_step_rel must be positive, got {self.fd_step_rel!r}")
        if self.damping_halvings < 0:
            raise DomainError(
                f"damping_halvings must be nonnegative, got {self.damping_halvings!r}"
            )


DEFAULT_CONFIG = RootConfig()


@dataclass(frozen=True)
class RootResult:
    """Outcome of one root search.

    ``converged`` is True exactly when ``residual_abs`` meets the
    tolerance.  ``certified`` is set by bisection when the bracket
    collapsed to one ulp: the sign change then pins the location to
    floating point resolution regardless of |f| (note a discontinuous f
    can flip sign without a root, so certification is about the sign
    change, and callers decide what it is worth).  ``trace`` holds
    (iterate, |f|) pairs when the solver recorded them.
    """

    root: complex
    residual_abs: float
    iterations: int
    converged: bool
    certified: bool = False
    trace: Optional[tuple] = None


def newton_complex(
    f: Callable[[complex], complex],
    seed: complex,
    config: RootConfig = DEFAULT_CONFIG,
) -> RootResult:
    """Damped Newton iteration on a complex analytic function.

    The derivative is a central difference with step
    ``fd_step_rel * max(1, |z|)``.  Each raw step is halved until |f|
    decreases, up to ``damping_halvings`` times; if the budget runs out
    the last candidate is accepted anyway so the iteration cannot stall
    in place.  Running out of ``max_iter`` returns a non-converged
    result; a derivative magnitude below 1e-300 raises
    :class:`~filmplasmon.errors.SingularityError`.
    """
    z = complex(seed)
    fz = f(z)
    trace = [(z, abs(fz))]
    iterations = 0
    while abs(fz) > config.tol_residual and iterations < config.max_iter:
        h = config.fd_step_rel * max(1.0, abs(z))
        der = (f(z + h) - f(z - h)) / (2.0 * h)
        if abs(der) < 1e-300:
            raise SingularityError(f"Newton derivative vanished near z = {z}")
        step = fz / der
        cand = z - step
        fc = f(cand)
        halvings = 0
        while abs(fc) >= abs(fz) and halvings < config.damping_halvings:
            step *= 0.5
            cand = z - step
            fc = f(cand)
            halvings += 1
        z, fz = cand, fc
        iterations += 1
        trace.append((z, abs(fz)))
    return RootResult(
        root=z,
        residual_abs=abs(fz),
        iterations=iterations,
        converged=abs(fz) <= config.tol_residual,
        trace=tuple(trace),
    )


def bisect_real(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    config: RootConfig = DEFAULT_CONFIG,
) -> RootResult:
    """Bisection for a real root of a real valued function.

    Requires a sign change on [lo, hi], else raises
    :class:`~filmplasmon.errors.BracketError`.  Returns the first
    midpoint where |f| meets the tolerance once the bracket is narrower
    than 1e-14 * max(1, |midpoint|).  If the bracket collapses to one ulp
    before that, the endpoint with the smaller |f| is returned with
    ``certified`` True; near-light-line roots with heavy cancellation in
    f land on this path.
    """
    lo = float(lo)
    hi = float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise DomainError(f"need finite lo < hi, got [{lo!r}, {hi!r}]")
    flo = float(f(lo))
    fhi = float(f(hi))
    if flo == 0.0:
        return RootResult(complex(lo), 0.0, 0, True)
    if fhi == 0.0:
        return RootResult(complex(hi), 0.0, 0, True)
    if (flo > 0.0) == (fhi > 0.0):
        raise BracketError(
            f"no sign change on [{lo!r}, {hi!r}]: f(lo) = {flo!r}, f(hi) = {fhi!r}"
        )
    iterations = 0
    while True:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            root, f_root = (lo, flo) if abs(flo) <= abs(fhi) else (hi, fhi)
            return RootResult(
                root=complex(root),
                residual_abs=abs(f_root),
                iterations=iterations,
                converged=abs(f_root) <= config.tol_residual,
                certified=True,
            )
        fm = float(f(mid))
        iterations += 1
        if fm == 0.0:
            return RootResult(complex(mid), 0.0, iterations, True)
        if abs(fm) <= config.tol_residual and (hi - lo) <= 1e-14 * max(1.0, abs(mid)):
            return RootResult(complex(mid), abs(fm), iterations, True)
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm


def default_seed(k: float, thickness: float) -> complex:
    """Starting frequency for Newton when the caller has no better idea.

    The long wavelength expansion, clamped to 0.9999*K should it ever
    reach the light line.  The expansion goes nonpositive for
    K*D >= sqrt(8); there the closed form for a screened film takes
    over, which always lies in (0, K).
    """
    s = small_k_omega(k, thickness)
    if s >= k:
        s = 0.9999 * k
    if s <= 0.0:
        s = closed_form_omega(k, thickness)
    return complex(s)


def _bracket_top(k: float, film: FilmParams) -> float:
    # The Drude coefficient has a pole where epsilon vanishes (Omega = 1
    # when nu = 0) and the bound root sits below it, so the bracket stops
    # short of the pole.  A screened film has no such ceiling.
    if isinstance(film.g_model, DrudeG):
        return min(k, 1.0)
    return k


def solve_point(
    k: float,
    film: FilmParams,
    seed: Optional[complex] = None,
    config: Optional[RootConfig] = None,
) -> DispersionPoint:
    """Solve the dispersion relation at one wavevector.

    Lossless perfectly screened and Drude films are first attacked by
    bisection on (0, K), where the bound branch lives and the residual is
    real; that succeeds essentially always and is immune to seed quality.
    Anything else, or a failed bracket, runs damped Newton from ``seed``
    (default: the clamped long wavelength expansion).  The returned point
    is marked converged only when |F| meets ``config.tol_residual``; a
    real root outside (0, K), or a growing root (Im Omega > 0) in a
    collisional film, is reported as non-converged rather than passed off
    as a mode.
    """
    cfg = config if config is not None else DEFAULT_CONFIG
    k = float(k)
    if not (math.isfinite(k) and k > 0.0):
        raise DomainError(f"k must be finite and positive, got {k!r}")

    residual = lambda w: dispersion_residual(w, k, film)
    attempts: list[RootResult] = []
    result: Optional[RootResult] = None

    if film.nu == 0.0 and isinstance(film.g_model, (ZeroG, DrudeG)):
        lo = 1e-9 * k
        hi = math.nextafter(_bracket_top(k, film), 0.0)
        try:
            cand = bisect_real(
                lambda x: dispersion_residual(complex(x), k, film).real, lo, hi, cfg
            )
        except (BracketError, DomainError, SingularityError):
            cand = None
        if cand is not None:
            if cand.converged:
                result = cand
            else:
                attempts.append(cand)

    if result is None:
        start = default_seed(k, film.thickness) if seed is None else complex(seed)
        newton = newton_complex(residual, start, cfg)
        if newton.converged:
            result = newton
        else:
            attempts.append(newton)
            # Nothing converged: report the best iterate found.
            result = min(attempts, key=lambda r: r.residual_abs)

    omega = result.root
    converged = result.converged and result.residual_abs <= cfg.tol_residual
    if converged and omega.imag == 0.0 and not (0.0 < omega.real < k):
        # A real root outside (0, K) is not on the bound branch.
        converged = False
    if converged and film.nu > 0.0 and omega.imag > 0.0:
        # Passive films damp under exp(-i*omega*t); growth means the
        # iteration left the physical branch.
        converged = False
    return DispersionPoint(
        k=k,
        omega=omega,
        alpha=decay_constant(k, omega),
        g=complex(film.g_model.value(omega, k, film.nu)),
        residual_abs=result.residual_abs,
        iterations=result.iterations,
        converged=converged,
    )

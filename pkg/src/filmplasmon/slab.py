"""Exact bound TM modes of a Drude slab, used as a reference solution.

No thin film approximation here: the slab interior keeps its full
exponential profile, and matching the tangential fields at both faces
gives the even family (symmetric H_y, antisymmetric E_z) condition

    (kappa_in / epsilon) * tanh(kappa_in * D / 2) + kappa_out = 0,

with kappa_out = sqrt(K**2 - Omega**2) and
kappa_in = sqrt(K**2 - epsilon * Omega**2), both on the Re >= 0 branch.
The thin film dispersion relation is an approximation to this one, so
agreement between the two solvers on thin slabs is a real consistency
check rather than a tautology.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from .core import decay_constant, drude_epsilon
from .dispersion import closed_form_omega
from .errors import BracketError, ConvergenceError, DomainError, SingularityError
from .rootfind import DEFAULT_CONFIG, RootConfig, bisect_real, newton_complex


def _branch_sqrt(z: complex) -> complex:
    # Re >= 0 branch, Im >= 0 on the cut, same convention as decay_constant.
    a = cmath.sqrt(z)
    if a.real < 0.0 or (a.real == 0.0 and a.imag < 0.0):
        a = -a
    return a


def tmm_residual(omega: complex, k: float, thickness: float, nu: float = 0.0) -> complex:
    """Even mode matching condition of the full slab problem.

    Real for real Omega below the light line when nu = 0, which makes the
    bound branch bracketable on (0, K).
    """
    k = float(k)
    if not (math.isfinite(k) and k >= 0.0):
        raise DomainError(f"k must be finite and nonnegative, got {k!r}")
    thickness = float(thickness)
    if not (math.isfinite(thickness) and thickness > 0.0):
        raise DomainError(f"thickness must be positive, got {thickness!r}")
    w = complex(omega)
    eps = drude_epsilon(w, nu)
    if eps == 0.0:
        raise SingularityError(f"slab residual is singular where epsilon = 0, Omega = {w}")
    kappa_out = decay_constant(k, w)
    kappa_in = _branch_sqrt(k * k - eps * w * w)
    return (kappa_in / eps) * cmath.tanh(kappa_in * thickness / 2.0) + kappa_out


#: Largest |residual| at which a one-ulp bracket is still trusted as a
#: root rather than a sign-flipping discontinuity.
_CERTIFIED_CEILING = 1e-6


@dataclass(frozen=True)
class SlabMode:
    """One bound mode of the exact slab problem."""

    k: float
    omega: complex
    kappa_outside: complex
    kappa_inside: complex
    residual_abs: float
    iterations: int
    symmetry: str = "H_y symmetric / E_z antisymmetric"


def tmm_solve(
    k: float,
    thickness: float,
    nu: float = 0.0,
    seed: Optional[complex] = None,
    config: Optional[RootConfig] = None,
) -> SlabMode:
    """Find the bound even mode of the exact slab problem at one wavevector.

    Lossless slabs with no caller seed are bisected on (0, min(K, 1)).
    A bracket that collapses to one ulp is accepted while the residual is
    small: for very thin slabs the root hugs the light line so closely
    that cancellation floors |residual| above the tolerance, yet the sign
    change still pins the frequency to machine resolution.  Other cases
    run damped Newton, seeded with the thin film closed form unless the
    caller knows better, and raise
    :class:`~filmplasmon.errors.ConvergenceError` on failure.
    """
    cfg = config if config is not None else DEFAULT_CONFIG
    k = float(k)
    if not (math.isfinite(k) and k > 0.0):
        raise DomainError(f"k must be finite and positive, got {k!r}")
    thickness = float(thickness)
    if not (math.isfinite(thickness) and thickness > 0.0):
        raise DomainError(f"thickness must be positive, got {thickness!r}")
    if not (math.isfinite(nu) and nu >= 0.0):
        raise DomainError(f"nu must be finite and nonnegative, got {nu!r}")

    result = None
    if seed is None and nu == 0.0:
        # The bound even mode needs epsilon < 0, so it sits below the
        # epsilon zero at Omega = 1; capping the bracket there keeps the
        # tanh pole of the residual outside.
        try:
            cand = bisect_real(
                lambda x: tmm_residual(complex(x), k, thickness, nu).real,
                1e-9 * k,
                math.nextafter(min(k, 1.0), 0.0),
                cfg,
            )
        except (BracketError, DomainError, SingularityError):
            cand = None
        if cand is not None and (
            cand.converged
            or (cand.certified and cand.residual_abs <= _CERTIFIED_CEILING)
        ):
            result = cand
    if result is None:
        start = complex(seed) if seed is not None else complex(closed_form_omega(k, thickness))
        result = newton_complex(lambda w: tmm_residual(w, k, thickness, nu), start, cfg)
        if not result.converged:
            raise ConvergenceError(
                f"slab mode search failed at k = {k}: |residual| = "
                f"{result.residual_abs:.3e} after {result.iterations} iterations"
            )

    omega = result.root
    eps = drude_epsilon(omega, nu)
    return SlabMode(
        k=k,
        omega=omega,
        kappa_outside=decay_constant(k, omega),
        kappa_inside=_branch_sqrt(k * k - eps * omega * omega),
        residual_abs=result.residual_abs,
        iterations=result.iterations,
    )

"""Dispersion relation for the bound TM mode of a thin conducting film.

The film occupies 0 <= x <= thickness with vacuum on both sides and the
mode runs along the surface as exp(i*(K*z - Omega*t)).  Matching the
surface impedance seen from outside, i*alpha/Omega, against the
impedance of the electrically thin layer, i*(K*D/2)*(1 - g*K/Omega),
gives the mode condition.  Multiplying the mismatch by Omega/i clears
the poles and leaves the residual actually solved here,

    F(Omega) = alpha(K, Omega) - Omega*K*D/2 + g(Omega, K)*K**2*D/2,

which is finite at Omega = 0 and analytic away from the branch cut of
alpha and the singularities of g.  Roots with 0 < Omega < K are bound
modes; below the light line F is real for real Omega when g is real.

For a perfectly screened interior (g = 0) the relation is quadratic in
Omega**2 and has the closed form

    Omega(K) = 2*K / sqrt(4 + (K*D)**2),

whose long wavelength expansion Omega = K*(1 - (K*D)**2/8 + ...) shows
the mode hugging the light line with a quartic departure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import FilmParams, decay_constant
from .errors import DomainError, SingularityError, StateError


def _check_k(k: float) -> float:
    k = float(k)
    if not (math.isfinite(k) and k >= 0.0):
        raise DomainError(f"k must be finite and nonnegative, got {k!r}")
    return k


def _check_thickness(thickness: float) -> float:
    thickness = float(thickness)
    if not (math.isfinite(thickness) and thickness >= 0.0):
        raise DomainError(f"thickness must be finite and nonnegative, got {thickness!r}")
    return thickness


def vacuum_impedance(omega: complex, k: float) -> complex:
    """Surface impedance i*alpha/Omega seen looking into the vacuum side."""
    k = _check_k(k)
    w = complex(omega)
    if w == 0.0:
        raise SingularityError("vacuum impedance is singular at Omega = 0")
    return 1j * decay_constant(k, w) / w


def film_impedance(omega: complex, k: float, thickness: float, g: complex) -> complex:
    """Surface impedance i*(K*D/2)*(1 - g*K/Omega) of the thin layer."""
    k = _check_k(k)
    thickness = _check_thickness(thickness)
    w = complex(omega)
    if w == 0.0:
        raise SingularityError("film impedance is singular at Omega = 0")
    return 1j * (k * thickness / 2.0) * (1.0 - complex(g) * k / w)


def dispersion_residual(omega: complex, k: float, film: FilmParams) -> complex:
    """Mode condition in pole free form.

    Equals Omega/i times the impedance mismatch, so it vanishes exactly
    where the impedances match but stays finite at Omega = 0.  Model
    singularities (for instance 1/epsilon at a zero of epsilon) still
    raise, since g itself cannot be evaluated there.
    """
    k = _check_k(k)
    w = complex(omega)
    if k == 0.0:
        # Both layer terms carry factors of K, so the film drops out.
        return decay_constant(k, w)
    g = complex(film.g_model.value(w, k, film.nu))
    half_kd = 0.5 * k * film.thickness
    return decay_constant(k, w) - w * half_kd + g * k * half_kd


def closed_form_omega(k: float, thickness: float) -> float:
    """Exact bound mode frequency for a perfectly screened film (g = 0)."""
    k = _check_k(k)
    thickness = _check_thickness(thickness)
    return 2.0 * k / math.sqrt(4.0 + (k * thickness) ** 2)


def small_k_omega(k: float, thickness: float) -> float:
    """Long wavelength expansion Omega = K*(1 - (K*D)**2/8)."""
    k = _check_k(k)
    thickness = _check_thickness(thickness)
    return k * (1.0 - (k * thickness) ** 2 / 8.0)


@dataclass(frozen=True)
class DispersionPoint:
    """One solved point on a dispersion branch.

    ``residual_abs`` is |F| at the reported root and ``converged`` is the
    solver's verdict; a point with ``converged`` False carries the best
    iterate found and must not be trusted further.
    """

    k: float
    omega: complex
    alpha: complex
    g: complex
    residual_abs: float
    iterations: int
    converged: bool


@dataclass(eq=False)
class FieldProfile:
    """Mode fields sampled on a grid of positions across the film.

    Parallel arrays: ``region`` holds one of ``"below"``, ``"inside"``,
    ``"above"`` for each sample; the two film faces count as exterior.
    """

    x: np.ndarray
    h_y: np.ndarray
    e_x: np.ndarray
    e_z: np.ndarray
    region: np.ndarray


def field_profile(
    point: DispersionPoint,
    thickness: float,
    x_min: float,
    x_max: float,
    n_samples: int,
) -> FieldProfile:
    """Sample the mode fields of a converged point on a uniform grid.

    The grid is ``n_samples`` points from ``x_min`` to ``x_max``, which
    must straddle the film: x_min < 0 < thickness < x_max.  Samples at
    the interfaces take the vacuum side value.  Outside, H_y decays as
    exp(-alpha*|distance to the face|) and E_z = +-i*(alpha/Omega)*H_y
    with the sign flipping between the two faces.  Inside, H_y is
    constant across the thin layer, E_x is the outside value scaled by g,
    and E_z interpolates linearly between the face values, which makes
    E_z(0) = -E_z(D) exact.
    """
    if not point.converged:
        raise StateError("field_profile needs a converged point")
    thickness = _check_thickness(thickness)
    if not (math.isfinite(x_min) and math.isfinite(x_max)):
        raise DomainError("x_min and x_max must be finite")
    if not (x_min < 0.0 < thickness < x_max):
        raise DomainError(
            f"grid must straddle the film: need x_min < 0 < thickness < x_max, "
            f"got x_min = {x_min!r}, thickness = {thickness!r}, x_max = {x_max!r}"
        )
    if n_samples < 2:
        raise DomainError(f"n_samples must be at least 2, got {n_samples!r}")
    w, k, a, g = point.omega, point.k, point.alpha, point.g
    if w == 0.0:
        raise SingularityError("fields are singular at Omega = 0")

    xs = np.linspace(x_min, x_max, n_samples)
    below = xs <= 0.0
    above = xs >= thickness
    inside = ~(below | above)

    h_y = np.empty(xs.shape, dtype=complex)
    e_x = np.empty(xs.shape, dtype=complex)
    e_z = np.empty(xs.shape, dtype=complex)

    h_y[below] = np.exp(a * xs[below])
    h_y[above] = np.exp(a * (thickness - xs[above]))
    h_y[inside] = 1.0

    e_x[below] = (k / w) * h_y[below]
    e_x[above] = (k / w) * h_y[above]
    e_x[inside] = g * (k / w)

    e_z[below] = 1j * (a / w) * h_y[below]
    e_z[above] = -1j * (a / w) * h_y[above]
    # Face value from the layer impedance; equals i*alpha/Omega at a root.
    e_z_face = 1j * (k * thickness / 2.0) * (1.0 - g * k / w)
    e_z[inside] = e_z_face * (1.0 - 2.0 * xs[inside] / thickness)

    region = np.where(below, "below", np.where(above, "above", "inside"))
    return FieldProfile(x=xs, h_y=h_y, e_x=e_x, e_z=e_z, region=region)

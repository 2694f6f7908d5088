"""Unit scaling and bulk response for a conducting film.

All solver-facing quantities are dimensionless.  Lengths are measured in
units of the collisionless penetration depth c/omega_p, frequencies in
units of the plasma frequency omega_p, and wavevectors in units of
omega_p/c.  With that choice the vacuum light line is simply Omega = K
and a film is "thin" when its scaled thickness is below one.

The time convention is exp(-i*omega*t), so passive damped modes have
Im(Omega) <= 0 and transverse field decay means Re(alpha) >= 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import DomainError, SingularityError

if TYPE_CHECKING:  # pragma: no cover
    from .gmodel import GModel

#: Speed of light in Gaussian units, cm/s.
LIGHT_SPEED_GAUSSIAN = 2.99792458e10

#: Speed of light in SI units, m/s.
LIGHT_SPEED_SI = 2.99792458e8


def _require_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")


@dataclass(frozen=True)
class Scaling:
    """Conversion between laboratory units and solver units.

    Parameters
    ----------
    plasma_frequency:
        Angular plasma frequency omega_p of the film material, in rad/s.
    light_speed:
        Speed of light in the unit system of the physical inputs.
        Defaults to the Gaussian value (cm/s); pass ``LIGHT_SPEED_SI``
        when lengths are in metres.
    """

    plasma_frequency: float
    light_speed: float = LIGHT_SPEED_GAUSSIAN

    def __post_init__(self) -> None:
        _require_positive("plasma_frequency", self.plasma_frequency)
        _require_positive("light_speed", self.light_speed)

    @property
    def skin_depth(self) -> float:
        """Collisionless penetration depth c/omega_p."""
        return self.light_speed / self.plasma_frequency

    def normalize(self, d: float, k: float, omega: complex) -> tuple[float, float, complex]:
        """Map physical (thickness, wavevector, frequency) to solver units."""
        _require_positive("d", d)
        if not (math.isfinite(k) and k >= 0.0):
            raise DomainError(f"k must be finite and nonnegative, got {k!r}")
        return (
            d / self.skin_depth,
            k * self.light_speed / self.plasma_frequency,
            complex(omega) / self.plasma_frequency,
        )

    def denormalize(
        self, thickness: float, k: float, omega: complex
    ) -> tuple[float, float, complex]:
        """Inverse of :meth:`normalize`."""
        _require_positive("thickness", thickness)
        if not (math.isfinite(k) and k >= 0.0):
            raise DomainError(f"k must be finite and nonnegative, got {k!r}")
        return (
            thickness * self.skin_depth,
            k * self.plasma_frequency / self.light_speed,
            complex(omega) * self.plasma_frequency,
        )


@dataclass(frozen=True)
class FilmParams:
    """Scaled description of one film configuration.

    ``thickness`` is the film thickness in units of c/omega_p, ``nu`` the
    collision rate in units of omega_p, and ``g_model`` the field
    penetration model used by the dispersion residual.
    """

    thickness: float
    g_model: "GModel"
    nu: float = 0.0

    def __post_init__(self) -> None:
        _require_positive("thickness", self.thickness)
        if not (math.isfinite(self.nu) and self.nu >= 0.0):
            raise DomainError(f"nu must be finite and nonnegative, got {self.nu!r}")
        if not callable(getattr(self.g_model, "value", None)):
            raise DomainError(
                "g_model must provide a value(omega, k, nu) method, "
                f"got {type(self.g_model).__name__}"
            )

    @property
    def is_thin(self) -> bool:
        """True when the film is thinner than the skin depth."""
        return self.thickness < 1.0


def decay_constant(k: float, omega: complex) -> complex:
    """Transverse decay constant alpha = sqrt(K**2 - Omega**2).

    The branch is fixed by Re(alpha) >= 0 so the fields fall off away
    from the film.  On the cut (purely imaginary alpha) the sign with
    Im(alpha) >= 0 is kept, which matches the exp(-i*omega*t) convention.
    """
    a = cmath.sqrt(k * k - omega * omega)
    if a.real < 0.0 or (a.real == 0.0 and a.imag < 0.0):
        a = -a
    return a


def drude_epsilon(omega: complex, nu: float = 0.0) -> complex:
    """Drude permittivity 1 - 1/(Omega*(Omega + i*nu)) in scaled units."""
    if not (math.isfinite(nu) and nu >= 0.0):
        raise DomainError(f"nu must be finite and nonnegative, got {nu!r}")
    w = complex(omega)
    den = w * (w + 1j * nu)
    if den == 0.0:
        raise SingularityError(f"Drude permittivity has a pole at Omega = {w}")
    return 1.0 - 1.0 / den

"""Field penetration models for the film interior.

The thin-film boundary condition compresses everything about the film
interior into one dimensionless coefficient g(Omega, K) that sets how
much of the in-plane electric field survives inside the layer.  Each
supported treatment is a small frozen dataclass with a ``value`` method;
the solver only ever calls that method, so new models can be added
without touching the dispersion code.

Models
------
ZeroG
    Perfectly screened interior, g = 0.
ConstantG
    Frequency independent g, handy for sensitivity studies.
DrudeG
    Local bulk response, g = 1/epsilon(Omega).
TabulatedG
    Linear interpolation of measured or precomputed values.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .core import drude_epsilon
from .errors import DomainError, SingularityError, TableParseError, TableRangeError


class GValue(NamedTuple):
    """A coefficient value together with the tag of the model that made it."""

    g: complex
    model: str


class GModel:
    """Interface shared by all penetration models."""

    tag: str = "base"

    def value(self, omega: complex, k: float, nu: float = 0.0) -> complex:
        """Coefficient at scaled frequency ``omega`` and wavevector ``k``.

        ``k`` and ``nu`` are part of the call shape so wavevector or
        collision dependent treatments plug in without interface churn;
        the bundled models ignore what they do not need.
        """
        raise NotImplementedError


@dataclass(frozen=True)
class ZeroG(GModel):
    """No field penetration, the interior screens completely."""

    tag = "zero"

    def value(self, omega: complex, k: float, nu: float = 0.0) -> complex:
        return 0j


@dataclass(frozen=True)
class ConstantG(GModel):
    """Fixed coefficient, useful to probe how roots move with g."""

    g0: complex
    tag = "constant"

    def __post_init__(self) -> None:
        g0 = complex(self.g0)
        if not cmath.isfinite(g0):
            raise DomainError(f"g0 must be finite, got {self.g0!r}")
        object.__setattr__(self, "g0", g0)

    def value(self, omega: complex, k: float, nu: float = 0.0) -> complex:
        return self.g0


@dataclass(frozen=True)
class DrudeG(GModel):
    """Local bulk response of a Drude conductor, g = 1/epsilon."""

    tag = "drude"

    def value(self, omega: complex, k: float, nu: float = 0.0) -> complex:
        eps = drude_epsilon(omega, nu)
        if eps == 0.0:
            raise SingularityError(
                f"Drude g diverges where epsilon vanishes, at Omega = {complex(omega)}"
            )
        return 1.0 / eps


@dataclass(frozen=True)
class TabulatedG(GModel):
    """Piecewise linear interpolation between tabulated coefficients.

    Knot frequencies must be real, finite and strictly increasing.  The
    lookup uses the real part of the requested frequency, which is the
    right thing for weakly damped roots sitting close to the real axis.
    No extrapolation: frequencies outside the knot range raise
    :class:`~filmplasmon.errors.TableRangeError`.
    """

    omega_knots: tuple[float, ...]
    g_knots: tuple[complex, ...]
    tag = "tabulated"

    def __post_init__(self) -> None:
        omegas = tuple(float(w) for w in self.omega_knots)
        gs = tuple(complex(g) for g in self.g_knots)
        if len(omegas) < 2:
            raise DomainError(f"need at least 2 knots, got {len(omegas)}")
        if len(gs) != len(omegas):
            raise DomainError(
                f"knot count mismatch: {len(omegas)} frequencies, {len(gs)} values"
            )
        if not all(math.isfinite(w) for w in omegas):
            raise DomainError("knot frequencies must be finite")
        if not all(cmath.isfinite(g) for g in gs):
            raise DomainError("knot values must be finite")
        if any(b <= a for a, b in zip(omegas, omegas[1:])):
            raise DomainError("knot frequencies must be strictly increasing")
        object.__setattr__(self, "omega_knots", omegas)
        object.__setattr__(self, "g_knots", gs)
        object.__setattr__(self, "_w", np.asarray(omegas, dtype=float))
        object.__setattr__(self, "_g_re", np.asarray([g.real for g in gs], dtype=float))
        object.__setattr__(self, "_g_im", np.asarray([g.imag for g in gs], dtype=float))

    def value(self, omega: complex, k: float, nu: float = 0.0) -> complex:
        w = complex(omega).real
        if not (self.omega_knots[0] <= w <= self.omega_knots[-1]):
            raise TableRangeError(
                f"Omega = {w!r} outside tabulated range "
                f"[{self.omega_knots[0]!r}, {self.omega_knots[-1]!r}]"
            )
        return complex(
            float(np.interp(w, self._w, self._g_re)),
            float(np.interp(w, self._w, self._g_im)),
        )


def g_value(model: GModel, omega: complex, k: float, nu: float = 0.0) -> GValue:
    """Evaluate ``model`` and report the value with its model tag."""
    return GValue(complex(model.value(omega, k, nu)), model.tag)


def load_g_table(path) -> TabulatedG:
    """Read a tabulated model from a CSV file.

    Expected layout: a header line ``omega,g_re,g_im`` followed by at
    least two data rows with finite numbers and strictly increasing
    ``omega``.  Blank lines are skipped.  Malformed content raises
    :class:`~filmplasmon.errors.TableParseError` naming the offending
    line; unreadable files raise the underlying ``OSError``.
    """
    import csv

    rows: list[tuple[int, float, float, float]] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise TableParseError(f"{path}: file is empty")
        if [c.strip().lower() for c in header] != ["omega", "g_re", "g_im"]:
            raise TableParseError(
                f"{path}: line 1: expected header 'omega,g_re,g_im', "
                f"got {','.join(header)!r}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 3:
                raise TableParseError(
                    f"{path}: line {lineno}: expected 3 columns, got {len(row)}"
                )
            try:
                w, g_re, g_im = (float(cell) for cell in row)
            except ValueError:
                raise TableParseError(
                    f"{path}: line {lineno}: could not parse {row!r} as numbers"
                ) from None
            if not all(math.isfinite(v) for v in (w, g_re, g_im)):
                raise TableParseError(f"{path}: line {lineno}: values must be finite")
            rows.append((lineno, w, g_re, g_im))
    if len(rows) < 2:
        raise TableParseError(
            f"{path}: table requires at least 2 points, got {len(rows)}"
        )
    for (_, w_prev, *_), (lineno, w, *_) in zip(rows, rows[1:]):
        if w <= w_prev:
            raise TableParseError(
                f"{path}: line {lineno}: omega must be strictly increasing "
                f"({w!r} follows {w_prev!r})"
            )
    return TabulatedG(
        omega_knots=tuple(r[1] for r in rows),
        g_knots=tuple(complex(r[2], r[3]) for r in rows),
    )

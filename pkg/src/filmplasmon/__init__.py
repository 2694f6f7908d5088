"""Dispersion solver for bound TM modes of thin conducting films.

Everything is computed in dimensionless variables (frequencies in units
of the plasma frequency, lengths in units of the collisionless skin
depth); :class:`~filmplasmon.core.Scaling` converts to and from
laboratory units.  The usual entry points are
:func:`~filmplasmon.rootfind.solve_point` for one wavevector,
:func:`~filmplasmon.sweep.sweep_dispersion` for a curve, and
:func:`~filmplasmon.slab.tmm_solve` for the exact slab reference.
"""

from .core import (
    LIGHT_SPEED_GAUSSIAN,
    LIGHT_SPEED_SI,
    FilmParams,
    Scaling,
    decay_constant,
    drude_epsilon,
)
from .dispersion import (
    DispersionPoint,
    FieldProfile,
    closed_form_omega,
    dispersion_residual,
    field_profile,
    film_impedance,
    small_k_omega,
    vacuum_impedance,
)
from .errors import (
    BracketError,
    ConvergenceError,
    DomainError,
    FilmPlasmonError,
    SingularityError,
    StateError,
    TableParseError,
    TableRangeError,
)
from .gmodel import (
    ConstantG,
    DrudeG,
    GModel,
    GValue,
    TabulatedG,
    ZeroG,
    g_value,
    load_g_table,
)
from .rootfind import (
    DEFAULT_CONFIG,
    RootConfig,
    RootResult,
    bisect_real,
    default_seed,
    newton_complex,
    solve_point,
)
from .slab import SlabMode, tmm_residual, tmm_solve
from .sweep import (
    SweepFailure,
    SweepRequest,
    SweepResult,
    TmmComparison,
    compare_tmm,
    sweep_dispersion,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "LIGHT_SPEED_GAUSSIAN",
    "LIGHT_SPEED_SI",
    "Scaling",
    "FilmParams",
    "decay_constant",
    "drude_epsilon",
    "GModel",
    "GValue",
    "ZeroG",
    "ConstantG",
    "DrudeG",
    "TabulatedG",
    "g_value",
    "load_g_table",
    "DispersionPoint",
    "FieldProfile",
    "film_impedance",
    "vacuum_impedance",
    "dispersion_residual",
    "closed_form_omega",
    "small_k_omega",
    "field_profile",
    "RootConfig",
    "RootResult",
    "DEFAULT_CONFIG",
    "newton_complex",
    "bisect_real",
    "default_seed",
    "solve_point",
    "SlabMode",
    "tmm_residual",
    "tmm_solve",
    "SweepRequest",
    "SweepResult",
    "SweepFailure",
    "TmmComparison",
    "sweep_dispersion",
    "compare_tmm",
    "FilmPlasmonError",
    "DomainError",
    "SingularityError",
    "TableRangeError",
    "TableParseError",
    "BracketError",
    "StateError",
    "ConvergenceError",
]

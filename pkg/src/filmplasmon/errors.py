"""Exception hierarchy.

Everything raised on purpose by this package derives from
:class:`FilmPlasmonError`, so callers can catch one type at the boundary.
The subclasses also inherit the matching builtin (ValueError or
RuntimeError) to stay friendly to generic handlers.
"""


class FilmPlasmonError(Exception):
    """Base class for all errors raised by filmplasmon."""


class DomainError(FilmPlasmonError, ValueError):
    """An input lies outside the physically meaningful domain."""


class SingularityError(DomainError):
    """Evaluation requested exactly at a pole or an essential zero."""


class TableRangeError(DomainError):
    """Interpolation requested outside the tabulated frequency range."""


class TableParseError(FilmPlasmonError, ValueError):
    """A tabulated-coefficient file could not be parsed."""


class BracketError(FilmPlasmonError, ValueError):
    """A bracketing interval does not enclose a sign change."""


class StateError(FilmPlasmonError, RuntimeError):
    """An operation was applied to an object in an unusable state."""


class ConvergenceError(FilmPlasmonError, RuntimeError):
    """A solver failed to reach the requested tolerance."""

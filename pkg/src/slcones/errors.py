"""Exception taxonomy shared by every module.

Two top-level families matter for callers (and fix the CLI exit codes):
``InputError`` for anything wrong with the data handed to us, and
``NumericError`` for computations that ran but could not certify their
result.  Everything else subclasses one of those two.
"""
from __future__ import annotations


class SLConesError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SLConesError, ValueError):
    """Invalid or inconsistent input data (CLI exit code 2)."""


class NumericError(SLConesError, RuntimeError):
    """A numerical routine failed to converge or to certify its error
    bound (CLI exit code 3).

    Attributes
    ----------
    achieved : float or None
        The best error bound / residual actually reached, when known.
    """

    def __init__(self, message: str, achieved: float | None = None):
        super().__init__(message)
        self.achieved = achieved


class IncompleteSpectrumError(InputError):
    """The enumerated spectrum's cutoff cannot certify the requested
    exponent count; re-enumerate with a larger cutoff."""


class InconsistentProfileError(InputError):
    """A topology profile violates an exact-sequence constraint (some
    dimension formula went negative)."""


class InfeasibleGraphError(InputError):
    """The intersection graph admits no positive balanced solution."""


class PreconditionError(InputError):
    """A documented precondition of an operation does not hold."""


class DegeneratePhaseError(InputError):
    """Phase vectors cancel exactly; the combined phase is undefined."""


class WallError(InputError):
    """The requested rate lies in the exceptional exponent set where the
    moduli dimension is undefined."""

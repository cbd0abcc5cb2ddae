"""Exception types raised across the package.

Every failure mode has its own class so callers (and the CLI exit-code
mapping) can distinguish bad input, numerical backend failure, and
non-convergence without string matching.
"""

from __future__ import annotations


class SpectralOrderError(Exception):
    """Base class for all errors raised by this package."""


# --- input / precondition violations ---------------------------------------


class NonSquareError(SpectralOrderError):
    """Input array is not a square matrix."""


class NotHermitianError(SpectralOrderError):
    """Input asymmetry exceeds the construction tolerance."""


class DimMismatchError(SpectralOrderError):
    """Operands have different dimensions."""


class NotProjectionError(SpectralOrderError):
    """A matrix claimed to be a projection is not one within tolerance."""


class EmptySetError(SpectralOrderError):
    """An operation requiring a nonempty collection received an empty one."""


class NonPositiveScaleError(SpectralOrderError):
    """Affine maps of the order require a strictly positive scale factor."""


class DeltaTooLargeError(SpectralOrderError):
    """Shift exceeds the admissible floor, so a shifted term is not PSD."""


class NotInvertibleError(SpectralOrderError):
    """A shifted element is not positive invertible within the floor."""


class NotOrthogonalError(SpectralOrderError):
    """Elements of a claimed orthogonal family have a nonzero product."""


class TooFewElementsError(SpectralOrderError):
    """Orthogonal-family formulas require at least two elements."""


class NotCommutingError(SpectralOrderError):
    """A claimed commuting family has a commutator above tolerance."""


class NotMonotoneError(SpectralOrderError):
    """A claimed monotone chain has an adjacent pair out of order."""


class NotPositiveError(SpectralOrderError):
    """An operand required to be positive semidefinite is not."""


class ClassViolationError(SpectralOrderError):
    """An input does not belong to the operator class it was claimed in."""


class InvalidSpecError(SpectralOrderError):
    """Instance-generator specification is malformed."""


class UnknownSuiteError(SpectralOrderError):
    """Requested verification suite id does not exist."""


class InvalidFamilyError(SpectralOrderError):
    """A spectral family violates monotonicity or does not end at the identity."""


# --- numerical failures ------------------------------------------------------


class EigenFailureError(SpectralOrderError):
    """The eigensolver backend did not converge."""


class InternalLatticeError(SpectralOrderError):
    """A lattice construction produced a non-monotone projection family.

    This indicates a tolerance misconfiguration rather than bad input, so it
    is never silently repaired.
    """


class NoConvergenceError(SpectralOrderError):
    """An iteration hit its cap before meeting the stopping criterion.

    Carries the last iterate and residual so callers can still compare it
    against the lattice-route answer.
    """

    def __init__(self, message, last_iterate=None, residual=None, trace=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual
        self.trace = trace if trace is not None else []

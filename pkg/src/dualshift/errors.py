"""Exception types raised across the package."""


class DualShiftError(Exception):
    """Base class for all package errors."""


class BandOverflow(DualShiftError):
    """An exact result does not fit in the requested frequency band."""


class GridTooSmall(DualShiftError):
    """A sampling grid has fewer points than the band it must resolve."""


class PoleProximity(DualShiftError):
    """Evaluation point too close to a pole of a Blaschke factor."""


class TailTooLarge(DualShiftError):
    """The certified Fourier tail exceeds the caller's tolerance."""


class ZeroAtOrigin(DualShiftError):
    """An operation needs u(0) != 0 but u vanishes at the origin."""


class IllConditioned(DualShiftError):
    """|u(0)| is too small to branch on safely, but not clearly zero."""


class RankDeficient(DualShiftError):
    """A spanning set collapsed to lower rank than required."""


class NotOrthogonal(DualShiftError):
    """Two subspaces expected to be orthogonal are not."""


class NoScorableColumns(DualShiftError):
    """Every direction of a subspace escapes the operator's exact region."""


class PredicateFailed(DualShiftError):
    """A structural predicate on a subspace failed beyond tolerance."""


class NotInvariant(DualShiftError):
    """A subspace is not invariant under the operator."""

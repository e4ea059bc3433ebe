"""Exception types shared across the toolkit."""

from __future__ import annotations


class BetheKitError(Exception):
    """Base class for all toolkit errors."""


class ModeMismatch(BetheKitError):
    """Exact and float quantities were mixed in one operation."""


class DivisionByZero(BetheKitError):
    """Exact division by zero."""


class NearPole(DivisionByZero):
    """Float division by a magnitude below the pole threshold."""


class ExactModeUnsupported(BetheKitError):
    """Operation requires float mode (transcendental or numeric step)."""


class PoleAtCoincidentArguments(BetheKitError):
    """Kernel evaluated at coincident spectral arguments."""


class IndexOutOfRange(BetheKitError):
    """Site index outside 1..N."""


class InvalidRange(BetheKitError):
    """Malformed site range or split."""


class NonAdjacentRanges(BetheKitError):
    """Block product of operators on non-adjacent site ranges."""


class CoincidentParameters(BetheKitError):
    """Spectral parameters are not pairwise distinct."""


class ProbeCoincidesWithRoot(BetheKitError):
    """Transfer-matrix probe point collides with a spectral parameter."""


class ZeroVector(BetheKitError):
    """Vanishing vector where a nonzero one is required."""


class DimensionCapExceeded(BetheKitError):
    """Dense oracle requested beyond its size cap."""


class UnmatchedCertificate(BetheKitError):
    """Certified eigenvalue absent from the dense spectrum."""


class VanishingLocalEigenvalue(BetheKitError):
    """Homogeneous closed form hit a zero local vacuum eigenvalue."""


class HomogeneousOnly(BetheKitError):
    """Closed form requested on an inhomogeneous chain."""


class ConfigInvalid(BetheKitError):
    """Run configuration failed validation."""


# Rejection reasons recorded (not raised) by the Bethe solver.
NO_CONVERGENCE = "no_convergence"
COLLAPSED_ROOTS = "collapsed_roots"
DEGENERATE_ROOT = "degenerate_root"
FAILED_CERTIFICATION = "failed_certification"

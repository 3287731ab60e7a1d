"""Exception hierarchy for the scattering solvers.

Every failure mode that callers are expected to branch on gets its own
class; the CLI maps a subset of these to process exit codes.
"""


class AknsError(Exception):
    """Base class for all package errors."""


class GridShapeError(AknsError):
    """Grid nodes violate the uniform / panel-divisibility requirements."""


class ShapeError(AknsError):
    """Arrays passed together have inconsistent shapes."""


class PoleError(AknsError):
    """Evaluation requested exactly at a pole of a map or of Gamma."""


class DegenerateError(AknsError):
    """Polynomial is identically zero or constant; no roots to return."""


class RootCapError(AknsError):
    """Polynomial degree exceeds the configured root-finding cap."""


class DomainError(AknsError):
    """Spectral parameter lies in the wrong half-plane for the family."""


class DecayError(AknsError):
    """Potential does not decay below tolerance at the grid endpoints."""


class NonvanishingAssumptionViolated(AknsError):
    """A seed solution |f|, |ftil|, |g| or |gtil| dips below the floor."""


class SolverDivergence(AknsError):
    """Iterative solve failed to converge or produced non-finite values."""


class CoefficientOverflowError(AknsError, OverflowError):
    """A recurrence intermediate exceeded the overflow guard (1e100)."""


class DegenerateQuotient(AknsError):
    """Both norming-constant quotients have near-zero denominators."""


class RankDeficiency(AknsError):
    """Least-squares matrix is rank deficient at the stated tolerance."""


class DegenerateDenominator(AknsError):
    """Potential recovery hit a near-zero Jost component denominator."""


class ConfigError(AknsError):
    """Run configuration file is malformed or inconsistent."""

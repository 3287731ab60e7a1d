"""Direct and inverse scattering for the Zakharov-Shabat (AKNS) system.

The library represents Jost solutions of

    n1' + i*rho*n1 = q(x) n2,      n2' - i*rho*n2 = r(x) n1

as power series in the mapped spectral parameter z = (1/2 + i rho)/(1/2 - i rho),
computes the scattering entries a, atil, b, btil and the discrete spectrum
from the series coefficients at x = 0, and recovers (q, r) from scattering
data by solving truncated linear systems for the coefficients.
"""

from .errors import (
    AknsError,
    CoefficientOverflowError,
    ConfigError,
    DecayError,
    DegenerateDenominator,
    DegenerateError,
    DegenerateQuotient,
    DomainError,
    GridShapeError,
    NonvanishingAssumptionViolated,
    PoleError,
    RankDeficiency,
    RootCapError,
    ShapeError,
    SolverDivergence,
)
from .numerics import (
    ComplexField,
    Grid,
    Polynomial,
    complex_gamma,
    cumulative_tail_left,
    cumulative_tail_right,
    integrate,
    polynomial_roots,
    spline_derivative,
)

__version__ = "0.1.0"

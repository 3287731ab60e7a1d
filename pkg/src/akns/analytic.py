"""Closed-form scattering data for the chirped hyperbolic-secant pair.

For q(x) = -iA sech(x) exp(-i gamma A ln cosh x), r = -conj(q), the
scattering entries are Gamma-function quotients and the discrete
spectrum is an explicit finite ladder, which makes this family the
reference against which the series solvers are validated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import complex_gamma, reciprocal_gamma

__all__ = ["SechChirpScattering"]


@dataclass(frozen=True)
class SechChirpScattering:
    """Analytic scattering data for amplitude A > 0 and chirp rate gamma."""

    A: float
    gamma: float

    def __post_init__(self) -> None:
        if self.A <= 0.0:
            raise ValueError("amplitude A must be positive")

    @property
    def T(self) -> complex:
        return complex(np.sqrt(complex(self.gamma**2 / 4.0 - 1.0)))

    @property
    def omega_plus(self) -> complex:
        return -1j * self.A * (self.T + self.gamma / 2.0)

    @property
    def omega_minus(self) -> complex:
        return 1j * self.A * (self.T - self.gamma / 2.0)

    def omega(self, rho):
        return -1j * np.asarray(rho) - 1j * self.A * self.gamma / 2.0 + 0.5

    def a(self, rho):
        """Transmission-type entry a(rho).

        The denominator Gammas enter through 1/Gamma, which is entire;
        a therefore evaluates to an exact zero at each eigenvalue
        instead of suffering pole/pole cancellation.
        """
        w = self.omega(rho)
        wp, wm = self.omega_plus, self.omega_minus
        out = (
            complex_gamma(w)
            * complex_gamma(w - wm - wp)
            * reciprocal_gamma(w - wp)
            * reciprocal_gamma(w - wm)
        )
        return out if np.ndim(rho) else complex(out)

    def b(self, rho):
        """Reflection-type entry b(rho)."""
        w = self.omega(rho)
        wp, wm = self.omega_plus, self.omega_minus
        front = (1j / self.A) * np.power(2.0, -1j * self.gamma * self.A)
        out = (
            front
            * complex_gamma(w)
            * complex_gamma(1.0 - w + wm + wp)
            * reciprocal_gamma(wp)
            * reciprocal_gamma(wm)
        )
        return out if np.ndim(rho) else complex(out)

    @property
    def eigenvalue_count(self) -> int:
        return math.floor(0.5 + self.A * abs(self.T))

    def eigenvalues(self) -> list[complex]:
        """Zeros of a in the upper half-plane, sorted by imaginary part."""
        rho = [
            self.A * self.T - 1j * (m - 0.5)
            for m in range(1, self.eigenvalue_count + 1)
        ]
        return sorted(rho, key=lambda v: (v.imag, v.real))

    def norming_constants(self) -> list[complex]:
        """c_m = b(rho_m), ordered like eigenvalues()."""
        return [self.b(rho) for rho in self.eigenvalues()]

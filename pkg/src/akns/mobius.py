"""Moebius maps between the spectral parameter rho and the series variables.

z = (1/2 + i rho)/(1/2 - i rho) maps the closed upper half-plane onto
the closed unit disk (with |z| = 1 exactly on the real axis); ztil is
its reflection for the lower half-plane.  On the real axis ztil(rho)
is the complex conjugate of z(rho).
"""

from __future__ import annotations

import numpy as np

from .errors import PoleError

__all__ = ["mobius_z", "mobius_ztil", "rho_of_z", "rho_of_ztil"]


def _check_denominator(den, what: str) -> None:
    if np.any(np.asarray(den) == 0.0):
        raise PoleError(f"{what} evaluated at its pole")


def mobius_z(rho):
    """z(rho); pole at rho = -i/2."""
    rho = np.asarray(rho, dtype=complex)
    den = 0.5 - 1j * rho
    _check_denominator(den, "z(rho)")
    out = (0.5 + 1j * rho) / den
    return out if out.ndim else complex(out)


def mobius_ztil(rho):
    """ztil(rho); pole at rho = +i/2."""
    rho = np.asarray(rho, dtype=complex)
    den = 0.5 + 1j * rho
    _check_denominator(den, "ztil(rho)")
    out = (0.5 - 1j * rho) / den
    return out if out.ndim else complex(out)


def rho_of_z(z):
    """Inverse of mobius_z; pole at z = -1."""
    z = np.asarray(z, dtype=complex)
    den = 2j * (z + 1.0)
    _check_denominator(den, "rho(z)")
    out = (z - 1.0) / den
    return out if out.ndim else complex(out)


def rho_of_ztil(ztil):
    """Inverse of mobius_ztil; pole at ztil = -1."""
    ztil = np.asarray(ztil, dtype=complex)
    den = 2j * (ztil + 1.0)
    _check_denominator(den, "rho(ztil)")
    out = (1.0 - ztil) / den
    return out if out.ndim else complex(out)

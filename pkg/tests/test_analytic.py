"""Closed-form chirped-sech scattering data against its published values."""

import numpy as np
import pytest

from akns.analytic import SechChirpScattering

REF = SechChirpScattering(A=1.65, gamma=0.1)

# Reference discrete data for A = 1.65, gamma = 0.1.
EIGENVALUES = [0.14793620932365j, 1.14793620932365j]
NORMING = [
    -0.187821133726638 + 0.982203248684122j,
    -0.0643040290406992 - 0.997930354207713j,
]


def test_two_eigenvalues_on_the_imaginary_axis():
    assert REF.eigenvalue_count == 2
    eigs = REF.eigenvalues()
    assert len(eigs) == 2
    for got, want in zip(eigs, EIGENVALUES):
        assert got.real == 0.0
        assert abs(got - want) < 1e-12


def test_a_vanishes_at_the_eigenvalues():
    for rho in REF.eigenvalues():
        assert abs(REF.a(rho)) < 1e-11


def test_norming_constants_match_reference():
    for got, want in zip(REF.norming_constants(), NORMING):
        assert abs(got - want) < 1e-12


def test_focusing_unitarity_on_the_real_axis():
    # r = -conj(q) implies |a|^2 + |b|^2 = 1 for real rho
    rho = np.array([-25.0, -4.2, -0.31, 0.017, 0.3, 1.7, 12.0, 30.0])
    a = REF.a(rho)
    b = REF.b(rho)
    assert np.max(np.abs(np.abs(a) ** 2 + np.abs(b) ** 2 - 1.0)) < 5e-13


def test_vectorised_matches_scalar():
    rho = np.array([-2.0, 0.5, 7.0])
    a_vec, b_vec = REF.a(rho), REF.b(rho)
    for k, r in enumerate(rho):
        assert abs(a_vec[k] - REF.a(float(r))) < 1e-14 * abs(a_vec[k])
        assert abs(b_vec[k] - REF.b(float(r))) < 1e-14 * max(1.0, abs(b_vec[k]))


def test_rejects_nonpositive_amplitude():
    with pytest.raises(ValueError):
        SechChirpScattering(A=0.0, gamma=0.1)

"""Tests for the Jost seed solutions at rho = +-i/2.

The strongest check compares the Wronskian-built transfer coefficient
a(i/2) for the chirped-sech potential against the closed-form
Gamma-function value; it exercises quadrature, the Picard iteration,
and all four seed systems in one number.
"""

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from akns.analytic import SechChirpScattering
from akns.errors import NonvanishingAssumptionViolated, SolverDivergence
from akns.numerics import ComplexField, Grid
from akns.potentials import (
    GaussPair,
    PotentialPair,
    SechChirp,
    sample_potential,
)
from akns.seeds import compute_seed_set


@pytest.fixture(scope="module")
def gauss_seeds():
    grid = Grid.build(-7.0, 7.0, 250)
    pair = sample_potential(GaussPair(), grid)
    return grid, pair, compute_seed_set(pair)


@pytest.fixture(scope="module")
def sech_seeds():
    grid = Grid.build(-35.0, 35.0, 500)
    pair = sample_potential(SechChirp(), grid)
    return grid, pair, compute_seed_set(pair)


def test_zero_potential_gives_plane_waves():
    grid = Grid.build(-5.0, 5.0, 20)
    zero = ComplexField(grid, np.zeros(grid.nodes.size, dtype=complex))
    seeds = compute_seed_set(PotentialPair(grid, zero, zero))
    assert np.all(seeds.f.values == 1.0)
    assert np.all(seeds.ftil.values == 1.0)
    assert np.all(seeds.g.values == 1.0)
    assert np.all(seeds.gtil.values == -1.0)
    for name in ("psi1_half", "psitil2_half", "phi2_half", "phitil1_half",
                 "f_prime", "ftil_prime", "g_prime", "gtil_prime"):
        assert np.all(getattr(seeds, name).values == 0.0)


def test_boundary_asymptotics(sech_seeds):
    _, _, seeds = sech_seeds
    assert abs(seeds.f.values[-1] - 1.0) <= 1e-10
    assert abs(seeds.ftil.values[-1] - 1.0) <= 1e-10
    assert abs(seeds.g.values[0] - 1.0) <= 1e-10
    assert abs(seeds.gtil.values[0] + 1.0) <= 1e-10


def test_derivative_fields_are_exact_products(gauss_seeds):
    _, pair, seeds = gauss_seeds
    q, r = pair.q.values, pair.r.values
    assert np.array_equal(seeds.f_prime.values, r * seeds.psi1_half.values)
    assert np.array_equal(seeds.ftil_prime.values, q * seeds.psitil2_half.values)
    assert np.array_equal(seeds.g_prime.values, q * seeds.phi2_half.values)
    assert np.array_equal(seeds.gtil_prime.values, r * seeds.phitil1_half.values)


def test_transfer_coefficient_matches_analytic_value(sech_seeds):
    grid, _, seeds = sech_seeds
    iz = grid.zero_index
    # a(i/2) = W[phi(i/2,.); psi(i/2,.)] at x=0; the e^{+-x/2} weights cancel
    a_half = (
        seeds.g.values[iz] * seeds.f.values[iz]
        - seeds.phi2_half.values[iz] * seeds.psi1_half.values[iz]
    )
    want = SechChirpScattering(1.65, 0.1).a(0.5j)
    assert abs(a_half - want) <= 1e-9

    # atil(-i/2) = W[phitil(-i/2,.); psitil(-i/2,.)] at x=0; for the
    # focusing pair r=-conj(q) this is conj(a(i/2))
    atil_half = (
        seeds.phitil1_half.values[iz] * seeds.psitil2_half.values[iz]
        - seeds.gtil.values[iz] * seeds.ftil.values[iz]
    )
    assert abs(atil_half - np.conj(want)) <= 1e-9


def test_psi_seed_against_ode_oracle(gauss_seeds):
    grid, _, seeds = gauss_seeds

    def rhs(x, w):
        q = np.exp(-x * x)
        r = -2.0 * np.exp(-x * x + 1j * x)
        # weighted psi system at rho=i/2: P1' = P1 + q P2, P2' = r P1
        return [w[0] + q * w[1], r * w[0]]

    sol = solve_ivp(rhs, (grid.x_max, 0.0), np.array([0.0, 1.0], dtype=complex),
                    method="DOP853", rtol=1e-12, atol=1e-14)
    assert sol.success
    iz = grid.zero_index
    assert abs(seeds.psi1_half.values[iz] - sol.y[0, -1]) <= 1e-9
    assert abs(seeds.f.values[iz] - sol.y[1, -1]) <= 1e-9


def test_wronskian_constant_across_grid(gauss_seeds):
    grid, _, seeds = gauss_seeds
    # W[phi(i/2,.); psi(i/2,.)] should be x-independent; the weighted
    # streams make it g*f - phi2_half*psi1_half node by node.
    w = (
        seeds.g.values * seeds.f.values
        - seeds.phi2_half.values * seeds.psi1_half.values
    )
    assert np.abs(w - w[grid.zero_index]).max() <= 1e-9


def test_nonvanishing_guard_triggers():
    grid = Grid.build(-7.0, 7.0, 100)
    pair = sample_potential(GaussPair(), grid)
    with pytest.raises(NonvanishingAssumptionViolated):
        compute_seed_set(pair, nonvanish_tol=1.1)


def test_iteration_budget_guard():
    grid = Grid.build(-7.0, 7.0, 100)
    pair = sample_potential(GaussPair(), grid)
    with pytest.raises(SolverDivergence):
        compute_seed_set(pair, max_iter=2)


def test_residual_guard():
    grid = Grid.build(-7.0, 7.0, 100)
    pair = sample_potential(GaussPair(), grid)
    with pytest.raises(SolverDivergence):
        compute_seed_set(pair, residual_tol=1e-30)

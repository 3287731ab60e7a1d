"""Session-wide fixtures: the three benchmark direct solves.

Each pipeline (sample potential, seed solve, four coefficient
recurrences, transfer entries, eigenvalues, norming constants) runs
once per session and is shared between the module tests and the
acceptance suite; wall-clock time is recorded for the runtime checks.
"""

import time
from dataclasses import dataclass

import numpy as np
import pytest

from akns.direct import (
    ScatteringData,
    log_symmetric_rho,
    solve_direct,
    uniform_rho,
)
from akns.numerics import Grid
from akns.potentials import (
    GaussPair,
    GaussPhasePair,
    PotentialPair,
    SechChirp,
    sample_potential,
)
from akns.seeds import SeedSet, compute_seed_set
from akns.spps import CoefficientTable, Family


@dataclass(frozen=True)
class ExampleRun:
    grid: Grid
    pair: PotentialPair
    seeds: SeedSet
    tables: dict
    data: ScatteringData
    seconds: float


def _run(spec, x_min, x_max, nodes_per_unit, order, rho_list) -> ExampleRun:
    start = time.perf_counter()
    grid = Grid.build(x_min, x_max, nodes_per_unit)
    pair = sample_potential(spec, grid)
    seeds = compute_seed_set(pair)
    tables, data = solve_direct(pair, seeds, order, rho_list)
    return ExampleRun(grid=grid, pair=pair, seeds=seeds, tables=tables,
                      data=data, seconds=time.perf_counter() - start)


@pytest.fixture(scope="session")
def chirp_run() -> ExampleRun:
    """Chirped-sech benchmark: N=160 on [-35,35] at 2500 nodes/unit."""
    return _run(SechChirp(), -35.0, 35.0, 2500, 160,
                uniform_rho(-30.0, 30.0, 2000))


@pytest.fixture(scope="session")
def gauss_run() -> ExampleRun:
    """Gaussian pair benchmark: N=400, 4000 uniform rho samples."""
    return _run(GaussPair(), -7.0, 7.0, 2500, 400,
                uniform_rho(-30.0, 30.0, 4000))


@pytest.fixture(scope="session")
def gauss_phase_run() -> ExampleRun:
    """Oscillatory-phase Gaussian benchmark: N=700, log-spaced rho."""
    return _run(GaussPhasePair(), -7.0, 7.0, 2500, 700,
                log_symmetric_rho(-3.0, float(np.log10(70.0)), 5000))


@dataclass(frozen=True)
class InverseTrial:
    data: ScatteringData
    result: "InverseResult"
    seconds: float


def _invert(run: ExampleRun, rho_list, order: int,
            data: ScatteringData | None = None) -> InverseTrial:
    from akns.direct import scattering_entries
    from akns.inverse import InverseConfig, solve_inverse

    start = time.perf_counter()
    if data is None:
        data = ScatteringData(
            samples=scattering_entries(run.tables, rho_list),
            upper=run.data.upper, lower=run.data.lower)
    result = solve_inverse(data, InverseConfig(order=order))
    return InverseTrial(data=data, result=result,
                        seconds=time.perf_counter() - start)


@pytest.fixture(scope="session")
def ex4_desk(chirp_run) -> InverseTrial:
    """Reduced chirped-sech reconstruction: K=1000 log-spaced, N=40."""
    return _invert(chirp_run,
                   log_symmetric_rho(-3.0, float(np.log10(30.0)), 1000), 40)


@pytest.fixture(scope="session")
def ex4_full(chirp_run) -> InverseTrial:
    """Chirped-sech reconstruction: K=4000 uniform on [-30,30], N=50."""
    return _invert(chirp_run, uniform_rho(-30.0, 30.0, 4000), 50)


@pytest.fixture(scope="session")
def ex4_wide(chirp_run) -> InverseTrial:
    """Chirped-sech reconstruction: K=14000 uniform on [-130,130]."""
    return _invert(chirp_run, uniform_rho(-130.0, 130.0, 14000), 50)


@pytest.fixture(scope="session")
def ex5_full(gauss_run) -> InverseTrial:
    """Gaussian-pair reconstruction from the benchmark's own samples."""
    return _invert(gauss_run, None, 50, data=gauss_run.data)


@pytest.fixture(scope="session")
def ex5_wide(gauss_run) -> InverseTrial:
    """Gaussian-pair reconstruction: K=14000 uniform on [-130,130]."""
    return _invert(gauss_run, uniform_rho(-130.0, 130.0, 14000), 50)


@pytest.fixture(scope="session")
def ex6_run(gauss_phase_run) -> InverseTrial:
    """Oscillatory-phase reconstruction from log-spaced samples, N=90."""
    return _invert(gauss_phase_run, None, 90, data=gauss_phase_run.data)

"""Potential pairs (q, r) on the computational grid.

Built-in families cover the closed-form chirped-sech pair and two
Gaussian pairs; arbitrary potentials enter through CSV files and are
resampled onto the grid by cubic splines.  All solvers require both
entries to have decayed below tolerance at the grid ends.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DecayError
from .numerics import ComplexField, Grid
from .serialize import fmt

__all__ = [
    "SechChirp",
    "GaussPair",
    "GaussPhasePair",
    "Sampled",
    "PotentialSpec",
    "PotentialPair",
    "sample_potential",
    "write_potential_csv",
    "read_potential_csv",
]


@dataclass(frozen=True)
class SechChirp:
    """q = -iA sech(x) exp(-i gamma A ln cosh x), r = -conj(q)."""

    A: float = 1.65
    gamma: float = 0.1

    def __post_init__(self) -> None:
        if self.A <= 0.0:
            raise ValueError("amplitude A must be positive")

    def evaluate(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        ax = np.abs(x)
        sech = 2.0 * np.exp(-ax) / (1.0 + np.exp(-2.0 * ax))
        logcosh = ax + np.log1p(np.exp(-2.0 * ax)) - np.log(2.0)
        q = -1j * self.A * sech * np.exp(-1j * self.gamma * self.A * logcosh)
        return q, -np.conj(q)


@dataclass(frozen=True)
class GaussPair:
    """q = exp(-x^2), r = -2 exp(-x^2 + ix); no symmetry between q and r."""

    def evaluate(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        gauss = np.exp(-(x**2))
        return gauss + 0j, -2.0 * gauss * np.exp(1j * x)


@dataclass(frozen=True)
class GaussPhasePair:
    """q = pi exp(-x^2 + i sin(pi x)), r = -pi exp(-x^2 - i cos(pi x))."""

    def evaluate(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        gauss = np.exp(-(x**2))
        q = np.pi * gauss * np.exp(1j * np.sin(np.pi * x))
        r = -np.pi * gauss * np.exp(-1j * np.cos(np.pi * x))
        return q, r


@dataclass(frozen=True)
class Sampled:
    """Potential read from a CSV file and spline-resampled onto the grid."""

    path: str

    def evaluate(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        x_file, q_file, r_file = read_potential_csv(self.path)
        if x_file[0] > x[0] + 1e-9 or x_file[-1] < x[-1] - 1e-9:
            raise ValueError(
                f"sampled potential covers [{x_file[0]}, {x_file[-1]}], "
                f"grid needs [{x[0]}, {x[-1]}]"
            )
        q = CubicSpline(x_file, q_file)(x)
        r = CubicSpline(x_file, r_file)(x)
        return q, r


PotentialSpec = Union[SechChirp, GaussPair, GaussPhasePair, Sampled]


@dataclass(frozen=True, eq=False)
class PotentialPair:
    """q and r sampled on a common grid, with endpoint decay enforced."""

    grid: Grid
    q: ComplexField
    r: ComplexField
    decay_tol: float = 1e-14

    def __post_init__(self) -> None:
        edges = np.r_[0:2, -2:0]
        worst = max(
            np.max(np.abs(self.q.values[edges])),
            np.max(np.abs(self.r.values[edges])),
        )
        if worst > self.decay_tol:
            raise DecayError(
                f"potential reaches {worst:.3e} at the grid ends "
                f"(tolerance {self.decay_tol:.1e}); enlarge the interval"
            )


def sample_potential(
    spec: PotentialSpec, grid: Grid, decay_tol: float = 1e-14
) -> PotentialPair:
    """Evaluate a potential family on the grid and validate decay."""
    q, r = spec.evaluate(grid.nodes)
    return PotentialPair(
        grid=grid,
        q=ComplexField(grid, q),
        r=ComplexField(grid, r),
        decay_tol=decay_tol,
    )


def write_potential_csv(pair: PotentialPair, path: str | Path) -> None:
    """Columns x, re_q, im_q, re_r, im_r with round-trip float formatting."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "re_q", "im_q", "re_r", "im_r"])
        for x, q, r in zip(pair.grid.nodes, pair.q.values, pair.r.values):
            writer.writerow([fmt(x), fmt(q.real), fmt(q.imag), fmt(r.real), fmt(r.imag)])


def read_potential_csv(path: str | Path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read (x, q, r) columns; x must be strictly increasing."""
    xs: list[float] = []
    qs: list[complex] = []
    rs: list[complex] = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            xs.append(float(row["x"]))
            qs.append(complex(float(row["re_q"]), float(row["im_q"])))
            rs.append(complex(float(row["re_r"]), float(row["im_r"])))
    x = np.asarray(xs)
    if x.size < 2 or np.any(np.diff(x) <= 0.0):
        raise ValueError("potential CSV needs strictly increasing x column")
    return x, np.asarray(qs), np.asarray(rs)

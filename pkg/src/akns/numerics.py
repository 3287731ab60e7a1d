"""Shared numerical kernels: grids, quadrature, Gamma, roots, splines.

Everything downstream (seed solutions, power-series recurrences, the
scattering solvers) runs on a uniform grid whose interval count is a
multiple of five, so that composite 6-point closed Newton-Cotes panels
tile it exactly.  The cumulative integrators return antiderivative
values at *every* node by integrating the degree-5 interpolant of each
panel's samples, which keeps them at the same order as the plain rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.special
from scipy.interpolate import make_interp_spline

from .errors import (
    DegenerateError,
    GridShapeError,
    PoleError,
    RootCapError,
    ShapeError,
)

__all__ = [
    "Grid",
    "ComplexField",
    "Polynomial",
    "integrate",
    "cumulative_tail_left",
    "cumulative_tail_right",
    "complex_gamma",
    "polynomial_roots",
    "spline_derivative",
]

_ROOT_DEGREE_CAP = 2048

# ---------------------------------------------------------------------------
# grid and field containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Grid:
    """Uniform node set x_min..x_max with spacing 1/nodes_per_unit.

    Constraints: x_min < 0 < x_max with both endpoints (and hence 0)
    landing exactly on nodes, and the interval count divisible by 5.
    """

    x_min: float
    x_max: float
    nodes_per_unit: int
    nodes: np.ndarray

    def __post_init__(self) -> None:
        nodes = np.asarray(self.nodes, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        if self.nodes_per_unit <= 0:
            raise GridShapeError("nodes_per_unit must be a positive integer")
        if not self.x_min < 0.0 < self.x_max:
            raise GridShapeError(
                f"grid must straddle x=0, got [{self.x_min}, {self.x_max}]"
            )
        if nodes.ndim != 1 or nodes.size < 6:
            raise GridShapeError("grid needs at least 6 nodes (one panel)")
        if (nodes.size - 1) % 5 != 0:
            raise GridShapeError(
                f"{nodes.size - 1} intervals not divisible by 5"
            )
        h = 1.0 / self.nodes_per_unit
        steps = np.diff(nodes)
        if np.max(np.abs(steps - h)) > 1e-12 * max(1.0, abs(self.x_min), abs(self.x_max)):
            raise GridShapeError("nodes are not uniform at spacing 1/nodes_per_unit")
        if nodes[self.zero_index] != 0.0:
            raise GridShapeError("x=0 must be a node")

    @classmethod
    def build(cls, x_min: float, x_max: float, nodes_per_unit: int) -> "Grid":
        """Construct the grid, validating endpoint/node alignment."""
        npu = int(nodes_per_unit)
        i_lo = round(x_min * npu)
        i_hi = round(x_max * npu)
        if abs(i_lo / npu - x_min) > 1e-9 or abs(i_hi / npu - x_max) > 1e-9:
            raise GridShapeError(
                "x_min and x_max must be integer multiples of 1/nodes_per_unit"
            )
        nodes = np.arange(i_lo, i_hi + 1, dtype=float) / npu
        return cls(x_min=x_min, x_max=x_max, nodes_per_unit=npu, nodes=nodes)

    @property
    def h(self) -> float:
        return 1.0 / self.nodes_per_unit

    @property
    def n_panels(self) -> int:
        return (self.nodes.size - 1) // 5

    @property
    def zero_index(self) -> int:
        return round(-self.x_min * self.nodes_per_unit)


@dataclass(frozen=True, eq=False)
class ComplexField:
    """Complex samples over a grid; NaN/Inf are rejected at construction."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "values", values)
        if values.shape != self.grid.nodes.shape:
            raise ShapeError(
                f"field has {values.shape} values for {self.grid.nodes.shape} nodes"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("field contains NaN or Inf")


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Coefficients in ascending powers; leading zeros are callers' to trim."""

    coefficients: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coefficients", np.asarray(self.coefficients, dtype=complex)
        )

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coefficients)


# ---------------------------------------------------------------------------
# composite 6-point Newton-Cotes quadrature
# ---------------------------------------------------------------------------


def _panel_weight_matrix() -> np.ndarray:
    """W[k, j] = integral over [0, k] of the Lagrange basis l_j on nodes 0..5.

    Computed in exact rational arithmetic; row 5 reproduces the closed
    6-point Newton-Cotes weights (19, 75, 50, 50, 75, 19) * 5/288.
    """
    W = np.empty((6, 6), dtype=float)
    for j in range(6):
        # expand l_j(t) = prod_{m != j} (t - m)/(j - m) in ascending powers
        coeffs = [Fraction(1)]
        for m in range(6):
            if m == j:
                continue
            scale = Fraction(1, j - m)
            shifted = [Fraction(0)] + coeffs          # t * p(t)
            coeffs = [
                (shifted[i] if i < len(shifted) else Fraction(0))
                - Fraction(m) * (coeffs[i] if i < len(coeffs) else Fraction(0))
                for i in range(len(shifted))
            ]
            coeffs = [c * scale for c in coeffs]
        anti = [c / (i + 1) for i, c in enumerate(coeffs)]
        for k in range(6):
            acc = Fraction(0)
            for i, c in enumerate(anti):
                acc += c * Fraction(k) ** (i + 1)
            W[k, j] = float(acc)
    return W


_W_LEFT = _panel_weight_matrix()
_W_FULL = _W_LEFT[5].copy()
_W_RIGHT = _W_LEFT[5][None, :] - _W_LEFT


def _panels(values: np.ndarray) -> np.ndarray:
    """(P, 6) view of the samples, consecutive panels sharing endpoints."""
    if (values.size - 1) % 5 != 0:
        raise GridShapeError(f"{values.size - 1} intervals not divisible by 5")
    return np.lib.stride_tricks.sliding_window_view(values, 6)[::5]


def _integrate_values(values: np.ndarray, h: float) -> complex:
    return complex(h * np.sum(_panels(values) @ _W_FULL))


def _cumulative_left_values(values: np.ndarray, h: float) -> np.ndarray:
    """F[j] = integral from x_min to node j, at full panel order."""
    D = h * (_panels(values) @ _W_LEFT.T)          # (P, 6) partials from panel start
    full = D[:, 5]
    starts = np.empty_like(full)
    starts[0] = 0.0
    np.cumsum(full[:-1], out=starts[1:])
    out = np.empty(values.size, dtype=complex)
    out[:-1] = (starts[:, None] + D[:, :5]).ravel()
    out[-1] = starts[-1] + full[-1]
    return out


def _cumulative_right_values(values: np.ndarray, h: float) -> np.ndarray:
    """F[j] = integral from node j to x_max, accumulated from the right."""
    D = h * (_panels(values) @ _W_RIGHT.T)         # (P, 6) partials to panel end
    full = D[:, 0]
    tails = np.zeros(full.size, dtype=D.dtype)
    if full.size > 1:
        tails[:-1] = np.cumsum(full[:0:-1])[::-1]
    out = np.empty(values.size, dtype=complex)
    out[:-1] = (tails[:, None] + D[:, :5]).ravel()
    out[-1] = 0.0
    return out


def integrate(field: ComplexField) -> complex:
    """Composite 6-point Newton-Cotes integral; exact for degree <= 5."""
    return _integrate_values(field.values, field.grid.h)


def cumulative_tail_left(field: ComplexField) -> ComplexField:
    """Antiderivative from x_min, evaluated at every node."""
    return ComplexField(field.grid, _cumulative_left_values(field.values, field.grid.h))


def cumulative_tail_right(field: ComplexField) -> ComplexField:
    """Tail integral to x_max, evaluated at every node."""
    return ComplexField(field.grid, _cumulative_right_values(field.values, field.grid.h))


# ---------------------------------------------------------------------------
# special functions, roots, differentiation
# ---------------------------------------------------------------------------


def complex_gamma(w):
    """Gamma on the complex plane; raises PoleError at 0, -1, -2, ...

    Relative accuracy is better than 1e-13 on the strip |Im w| <= 60,
    0.1 <= |Re w| <= 10 used by the closed-form scattering data.
    """
    arr = np.asarray(w, dtype=complex)
    at_pole = (arr.imag == 0.0) & (arr.real <= 0.0) & (arr.real == np.rint(arr.real))
    if np.any(at_pole):
        raise PoleError("Gamma evaluated at a non-positive integer")
    out = scipy.special.gamma(arr)
    return complex(out) if np.isscalar(w) or arr.ndim == 0 else out


def reciprocal_gamma(w):
    """1/Gamma, entire in w; zero exactly at the non-positive integers."""
    arr = np.asarray(w, dtype=complex)
    out = scipy.special.rgamma(arr)
    return complex(out) if np.isscalar(w) or arr.ndim == 0 else out


def polynomial_roots(poly: Polynomial, degree_cap: int = _ROOT_DEGREE_CAP) -> np.ndarray:
    """All complex roots via companion-matrix eigenvalues, sorted by (re, im)."""
    c = poly.coefficients
    nonzero = np.nonzero(c)[0]
    if nonzero.size == 0:
        raise DegenerateError("polynomial is identically zero")
    degree = int(nonzero[-1])
    if degree == 0:
        raise DegenerateError("polynomial is a nonzero constant; no roots")
    if degree > degree_cap:
        raise RootCapError(f"degree {degree} exceeds cap {degree_cap}")
    roots = np.roots(c[: degree + 1][::-1])
    order = np.lexsort((roots.imag, roots.real))
    return roots[order]


def spline_derivative(field: ComplexField) -> ComplexField:
    """d(field)/dx at the nodes via a not-a-knot quintic spline.

    Exact for polynomial data up to degree five; needs at least 6
    nodes.  The quintic order matters for potential recovery, which
    differentiates on a coarse reconstruction grid where a cubic
    interpolant would dominate the error budget.
    """
    x = field.grid.nodes
    if x.size < 6:
        raise GridShapeError("spline differentiation needs at least 6 nodes")
    spline = make_interp_spline(x, field.values, k=5)
    return ComplexField(field.grid, spline(x, 1))

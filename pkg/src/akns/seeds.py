"""Jost solutions at the series centre rho = +-i/2.

The four power-series families are built on top of one Jost solution
each, evaluated at rho = i/2 (families anchored at +infinity or
-infinity via psi and phi) or rho = -i/2 (the tilde partners).  With
the exponential behaviour factored out, each seed pair solves a
first-order system whose Volterra integral form has kernels bounded by
one in the integration direction:

    psi  pair: P1' = P1 + q P2,  P2' = r P1,   (P1, P2) -> (0, 1) at x_max
    psit pair: F1' = q F2,  F2' = F2 + r F1,   (F1, F2) -> (1, 0) at x_max
    phi  pair: G1' = q G2,  G2' = r G1 - G2,   (G1, G2) -> (1, 0) at x_min
    phit pair: H1' = q H2 - H1,  H2' = r H1,   (H1, H2) -> (0, -1) at x_min

Here P = e^{x/2} psi(i/2, x) and so on.  Picard iteration on these
forms converges for every integrable potential (the ordered double
integrals contribute (|q|_1 |r|_1)^k / (k!)^2) and requires only the
node samples, so it applies unchanged to file-sampled potentials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NonvanishingAssumptionViolated, SolverDivergence
from .numerics import (
    ComplexField,
    _cumulative_left_values,
    _cumulative_right_values,
)
from .potentials import PotentialPair

__all__ = ["SeedSet", "compute_seed_set"]


@dataclass(frozen=True, eq=False)
class SeedSet:
    """Exponentially weighted Jost seeds and their derivative companions.

    f = e^{x/2} psi_2(i/2, x) and psi1_half = e^{x/2} psi_1(i/2, x), so
    f' = r * psi1_half without any differentiation; the other three
    follow the same pattern.  gtil tends to -1 at x_min, the rest of
    the anchor components tend to +1 at their own end.
    """

    grid: object
    f: ComplexField
    f_prime: ComplexField
    psi1_half: ComplexField
    ftil: ComplexField
    ftil_prime: ComplexField
    psitil2_half: ComplexField
    g: ComplexField
    g_prime: ComplexField
    phi2_half: ComplexField
    gtil: ComplexField
    gtil_prime: ComplexField
    phitil1_half: ComplexField


def _picard(
    constant: complex,
    plain: Callable[[np.ndarray], np.ndarray],
    weighted: Callable[[np.ndarray], np.ndarray],
    size: int,
    tol: float,
    max_iter: int,
    label: str,
) -> tuple[np.ndarray, np.ndarray]:
    """Fixed point of  B = constant + plain(W),  W = weighted(B)."""
    W = np.zeros(size, dtype=complex)
    B = np.full(size, constant, dtype=complex)
    for _ in range(max_iter):
        B_new = constant + plain(W)
        W_new = weighted(B_new)
        if not (np.all(np.isfinite(B_new)) and np.all(np.isfinite(W_new))):
            raise SolverDivergence(f"{label} seed iteration produced non-finite values")
        delta = max(
            np.max(np.abs(B_new - B)),
            np.max(np.abs(W_new - W)),
        )
        B, W = B_new, W_new
        scale = max(1.0, np.max(np.abs(B)), np.max(np.abs(W)))
        if delta <= tol * scale:
            return B, W
    raise SolverDivergence(f"{label} seed iteration did not converge in {max_iter} steps")


def _fd_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """Order-6 central difference, aligned to nodes 3..n-4."""
    return (
        -values[:-6]
        + 9.0 * values[1:-5]
        - 45.0 * values[2:-4]
        + 45.0 * values[4:-2]
        - 9.0 * values[5:-1]
        + values[6:]
    ) / (60.0 * h)


def compute_seed_set(
    pair: PotentialPair,
    tol: float = 1e-15,
    max_iter: int = 256,
    residual_tol: float = 1e-9,
    nonvanish_tol: float = 1e-8,
) -> SeedSet:
    """Solve the four weighted seed systems from their own boundaries.

    Raises SolverDivergence if the iteration stalls or the first-order
    residual at panel boundaries exceeds residual_tol, and
    NonvanishingAssumptionViolated if any anchor component |f|, |ftil|,
    |g|, |gtil| dips below nonvanish_tol anywhere on the grid.
    """
    grid = pair.grid
    x = grid.nodes
    h = grid.h
    n = x.size
    q = pair.q.values
    r = pair.r.values
    ep = np.exp(x)
    en = np.exp(-x)

    def tail_r(w: np.ndarray) -> np.ndarray:
        return _cumulative_right_values(w, h)

    def tail_l(w: np.ndarray) -> np.ndarray:
        return _cumulative_left_values(w, h)

    # anchored at x_max: kernels e^{x-t} with t >= x stay bounded by one
    f, psi1_half = _picard(
        1.0,
        lambda P1: -tail_r(r * P1),
        lambda P2: -ep * tail_r(en * (q * P2)),
        n, tol, max_iter, "psi",
    )
    ftil, psitil2_half = _picard(
        1.0,
        lambda F2: -tail_r(q * F2),
        lambda F1: -ep * tail_r(en * (r * F1)),
        n, tol, max_iter, "psi-tilde",
    )
    # anchored at x_min: kernels e^{t-x} with t <= x
    g, phi2_half = _picard(
        1.0,
        lambda G2: tail_l(q * G2),
        lambda G1: en * tail_l(ep * (r * G1)),
        n, tol, max_iter, "phi",
    )
    gtil, phitil1_half = _picard(
        -1.0,
        lambda H1: tail_l(r * H1),
        lambda H2: en * tail_l(ep * (q * H2)),
        n, tol, max_iter, "phi-tilde",
    )

    _check_residuals(
        x, h, q, r, f, psi1_half, ftil, psitil2_half, g, phi2_half, gtil,
        phitil1_half, residual_tol,
    )

    floors = {
        "f": np.min(np.abs(f)),
        "ftil": np.min(np.abs(ftil)),
        "g": np.min(np.abs(g)),
        "gtil": np.min(np.abs(gtil)),
    }
    bad = {k: v for k, v in floors.items() if v < nonvanish_tol}
    if bad:
        raise NonvanishingAssumptionViolated(
            f"seed component(s) vanish on the grid: "
            + ", ".join(f"min|{k}| = {v:.3e}" for k, v in bad.items())
        )

    wrap = lambda v: ComplexField(grid, v)
    return SeedSet(
        grid=grid,
        f=wrap(f),
        f_prime=wrap(r * psi1_half),
        psi1_half=wrap(psi1_half),
        ftil=wrap(ftil),
        ftil_prime=wrap(q * psitil2_half),
        psitil2_half=wrap(psitil2_half),
        g=wrap(g),
        g_prime=wrap(q * phi2_half),
        phi2_half=wrap(phi2_half),
        gtil=wrap(gtil),
        gtil_prime=wrap(r * phitil1_half),
        phitil1_half=wrap(phitil1_half),
    )


def _check_residuals(
    x, h, q, r, f, psi1_half, ftil, psitil2_half, g, phi2_half, gtil,
    phitil1_half, residual_tol,
) -> None:
    """First-order system residuals at panel boundaries, relative scale."""
    n = x.size
    interior = slice(3, n - 3)
    # panel-boundary nodes that carry a full central stencil; the
    # derivative array is aligned to global nodes 3..n-4
    probe = np.arange(5, n - 4, 5)
    local = probe - 3

    checks = [
        (psi1_half, lambda d: d - psi1_half[interior] - q[interior] * f[interior], f, "psi"),
        (f, lambda d: d - r[interior] * psi1_half[interior], psi1_half, "psi"),
        (ftil, lambda d: d - q[interior] * psitil2_half[interior], psitil2_half, "psi-tilde"),
        (psitil2_half, lambda d: d - psitil2_half[interior] - r[interior] * ftil[interior], ftil, "psi-tilde"),
        (g, lambda d: d - q[interior] * phi2_half[interior], phi2_half, "phi"),
        (phi2_half, lambda d: d + phi2_half[interior] - r[interior] * g[interior], g, "phi"),
        (phitil1_half, lambda d: d + phitil1_half[interior] - q[interior] * gtil[interior], gtil, "phi-tilde"),
        (gtil, lambda d: d - r[interior] * phitil1_half[interior], phitil1_half, "phi-tilde"),
    ]
    for field, residual_of, partner, label in checks:
        res = residual_of(_fd_derivative(field, h))[local]
        scale = 1.0 + np.abs(field[interior][local]) + np.abs(partner[interior][local])
        worst = np.max(np.abs(res) / scale)
        if worst > residual_tol:
            raise SolverDivergence(
                f"{label} seed residual {worst:.3e} exceeds {residual_tol:.1e}"
            )

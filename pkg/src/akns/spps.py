"""Power-series coefficient recurrences for the four Jost solutions.

Each Jost solution is expanded as a power series in the mapped spectral
variable (z for the solutions analytic in the upper half-plane, ztil
for the lower).  The series coefficients are vector functions of x
obtained by an integral recurrence seeded with the half-bound-state
solutions; every integrand is weighted so that only decaying
exponentials of the node coordinate appear.

The recurrence has the same algebraic shape for all four families once
the roles of the two potential entries and the two solution components
are assigned, so a single pair of kernels (one integrating from the
right edge, one from the left) serves all of them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import CoefficientOverflowError, ShapeError, SolverDivergence
from .numerics import Grid, _cumulative_left_values, _cumulative_right_values
from .potentials import PotentialPair
from .seeds import SeedSet

__all__ = [
    "Family",
    "CoefficientTable",
    "compute_family",
    "evaluate_jost",
    "write_coefficient_csv",
]

#: Hard ceiling on any coefficient magnitude during the recurrence.
OVERFLOW_LIMIT = 1.0e100


class Family(enum.Enum):
    """The four Jost-solution series families.

    A and B are analytic in the upper half of the rho plane (series in
    z); ATIL and BTIL in the lower half (series in ztil).  A and ATIL
    carry the solutions normalised at the right edge, B and BTIL those
    normalised at the left edge.
    """

    A = "a"
    ATIL = "atil"
    B = "b"
    BTIL = "btil"


_UPPER_FAMILIES = (Family.A, Family.B)
_RIGHT_FAMILIES = (Family.A, Family.ATIL)


@dataclass(frozen=True)
class CoefficientTable:
    """Coefficient streams for one family, indexed n = 0 .. order.

    The values at x = 0 are always retained (they are all the direct
    problem needs); ``edge_c1`` records the first-component coefficient
    at the far end of the run, where it must vanish for a sufficiently
    wide grid.  When ``fields`` is not None it holds the full spatial
    profiles [c1, c2, c1_prime, c2_prime], each an array of shape
    (order + 1, nodes).

    Component labels follow the Jost solution itself: ``c1`` multiplies
    the first vector component, ``c2`` the second, regardless of which
    one drives the recurrence internally.
    """

    family: Family
    order: int
    grid: Grid
    c1_at_zero: np.ndarray
    c2_at_zero: np.ndarray
    c1_prime_at_zero: np.ndarray
    c2_prime_at_zero: np.ndarray
    edge_c1: np.ndarray
    fields: list[np.ndarray] | None = None

    def field(self, name: str) -> np.ndarray:
        """Return the retained spatial profiles for one stream."""
        if self.fields is None:
            raise ValueError(
                "coefficient fields were not retained; rebuild the table "
                "with keep_fields=True"
            )
        index = {"c1": 0, "c2": 1, "c1_prime": 2, "c2_prime": 3}[name]
        return self.fields[index]


def _guard(n, *arrays):
    peak = max(np.abs(a).max() for a in arrays)
    if np.isnan(peak):
        raise SolverDivergence(
            f"coefficient recurrence produced NaN at order n={n}"
        )
    if peak > OVERFLOW_LIMIT:
        raise CoefficientOverflowError(
            f"coefficient magnitude {peak:.3e} exceeds "
            f"{OVERFLOW_LIMIT:.1e} at order n={n}"
        )


class _Recorder:
    """Collects the x = 0 samples (and one edge sample) of every row.

    Only scalars are stored unless ``keep`` is set, so the recurrence
    runs in O(nodes) memory regardless of the order.
    """

    def __init__(self, iz: int, edge_index: int, keep: bool):
        self.iz = iz
        self.edge_index = edge_index
        self.zero = [[], [], [], []]
        self.edge1 = []
        self.edge2 = []
        self.rows = [[], [], [], []] if keep else None

    def add(self, c1, c2, c1p, c2p) -> None:
        for store, value in zip(self.zero, (c1, c2, c1p, c2p)):
            store.append(value[self.iz])
        self.edge1.append(c1[self.edge_index])
        self.edge2.append(c2[self.edge_index])
        if self.rows is not None:
            for store, value in zip(self.rows, (c1, c2, c1p, c2p)):
                store.append(value.copy())


def _right_run(x, h, qq, rr, big_f, small_s, order, rec):
    """Recurrence for the families integrated from the right edge.

    In generic coordinates c2' = rr*c1 throughout, while c1' picks up
    c1 + qq*c2 plus the source carried over from the previous order;
    big_f is the seed component c2 is anchored to, small_s its partner.
    """
    inv_f = 1.0 / big_f
    weight = rr * inv_f * inv_f
    s_over_f = small_s * inv_f
    ep = np.exp(x)
    en = np.exp(-x)

    c1 = small_s.copy()
    c2 = big_f - 1.0
    c1p = small_s + qq * big_f
    c2p = rr * small_s
    rec.add(c1, c2, c1p, c2p)

    for n in range(1, order + 1):
        u = big_f * (c1p + c1 - qq * c2)
        integral = ep * _cumulative_right_values(en * u, h)
        c2_next = big_f * _cumulative_right_values(weight * integral, h)
        c1_next = s_over_f * c2_next - inv_f * integral
        c2p_next = rr * c1_next
        c1p_next = c1p + c1_next + c1 + qq * (c2_next - c2)

        _guard(n, c1_next, c2_next, c1p_next, c2p_next)
        c1, c2, c1p, c2p = c1_next, c2_next, c1p_next, c2p_next
        rec.add(c1, c2, c1p, c2p)


def _left_run(x, h, qq, rr, big_g, small_s, sign, order, rec):
    """Recurrence for the families integrated from the left edge.

    Mirror image of :func:`_right_run`: c1' = qq*c2 throughout, c2'
    picks up -c2 + rr*c1 plus the carried source; sign is the limit of
    big_g at the left edge (+1 or -1).
    """
    inv_g = 1.0 / big_g
    weight = qq * inv_g * inv_g
    s_over_g = small_s * inv_g
    ep = np.exp(x)
    en = np.exp(-x)

    c1 = big_g - sign
    c2 = small_s.copy()
    c1p = qq * small_s
    c2p = rr * big_g - small_s
    rec.add(c1, c2, c1p, c2p)

    for n in range(1, order + 1):
        v = big_g * (c2p - c2 - rr * c1)
        integral = en * _cumulative_left_values(ep * v, h)
        c1_next = big_g * _cumulative_left_values(weight * integral, h)
        c2_next = s_over_g * c1_next + inv_g * integral
        c1p_next = qq * c2_next
        c2p_next = c2p - c2_next - c2 + rr * (c1_next - c1)

        _guard(n, c1_next, c2_next, c1p_next, c2p_next)
        c1, c2, c1p, c2p = c1_next, c2_next, c1p_next, c2p_next
        rec.add(c1, c2, c1p, c2p)


def compute_family(
    family: Family,
    pair: PotentialPair,
    seeds: SeedSet,
    order: int,
    keep_fields: bool = False,
) -> CoefficientTable:
    """Run the coefficient recurrence for one family up to ``order``.

    Parameters
    ----------
    family : Family
        Which of the four series to build.
    pair : PotentialPair
        Sampled potential entries on the working grid.
    seeds : SeedSet
        Half-bound-state seeds computed on the same grid.
    order : int
        Highest coefficient index n; the table holds order + 1 rows.
    keep_fields : bool
        Retain the full spatial profiles of every row.  Off by default;
        at production sizes the x = 0 samples are all that is needed
        and the full profiles would not fit in memory.

    Returns
    -------
    CoefficientTable

    Raises
    ------
    CoefficientOverflowError
        If any intermediate magnitude exceeds ``OVERFLOW_LIMIT``.
    SolverDivergence
        If the recurrence produces NaN.
    """
    if order < 0:
        raise ValueError(f"order must be nonnegative, got {order}")
    if seeds.grid is not pair.grid and not np.array_equal(
        seeds.grid.nodes, pair.grid.nodes
    ):
        raise ShapeError("potential pair and seed set use different grids")

    grid = pair.grid
    x = grid.nodes
    q = pair.q.values
    r = pair.r.values
    edge_index = -1 if family in _RIGHT_FAMILIES else 0
    swap = family in (Family.ATIL, Family.BTIL)
    rec = _Recorder(grid.zero_index, edge_index, keep_fields)

    # Assign the generic roles.  The swapped families exchange both the
    # potential entries and the component streams.
    if family is Family.A:
        _right_run(x, grid.h, q, r, seeds.f.values, seeds.psi1_half.values,
                   order, rec)
    elif family is Family.ATIL:
        _right_run(x, grid.h, r, q, seeds.ftil.values,
                   seeds.psitil2_half.values, order, rec)
    elif family is Family.B:
        _left_run(x, grid.h, q, r, seeds.g.values, seeds.phi2_half.values,
                  1.0, order, rec)
    else:
        _left_run(x, grid.h, r, q, seeds.gtil.values,
                  seeds.phitil1_half.values, -1.0, order, rec)

    zero = [np.array(stream) for stream in rec.zero]
    edge1 = np.array(rec.edge1)
    edge2 = np.array(rec.edge2)
    fields = None
    if rec.rows is not None:
        fields = [np.array(stream) for stream in rec.rows]

    if swap:
        zero = [zero[1], zero[0], zero[3], zero[2]]
        edge1, edge2 = edge2, edge1
        if fields is not None:
            fields = [fields[1], fields[0], fields[3], fields[2]]

    return CoefficientTable(
        family=family,
        order=order,
        grid=grid,
        c1_at_zero=zero[0],
        c2_at_zero=zero[1],
        c1_prime_at_zero=zero[2],
        c2_prime_at_zero=zero[3],
        edge_c1=edge1,
        fields=fields,
    )


def write_coefficient_csv(path, table: CoefficientTable,
                          x_index: int | None = None) -> None:
    """Dump the coefficient streams at one node (default x = 0) as CSV.

    Columns: ``n,re_c1,im_c1,re_c2,im_c2``.
    """
    from .serialize import fmt

    if x_index is None or x_index == table.grid.zero_index:
        c1 = table.c1_at_zero
        c2 = table.c2_at_zero
    else:
        c1 = table.field("c1")[:, x_index]
        c2 = table.field("c2")[:, x_index]
    with open(path, "w", encoding="utf-8") as stream:
        stream.write("n,re_c1,im_c1,re_c2,im_c2\n")
        for n in range(table.order + 1):
            stream.write(
                f"{n},{fmt(c1[n].real)},{fmt(c1[n].imag)},"
                f"{fmt(c2[n].real)},{fmt(c2[n].imag)}\n"
            )


def evaluate_jost(table: CoefficientTable, rho: complex,
                  x_index: int | None = None) -> tuple[complex, complex]:
    """Evaluate one Jost solution from its truncated series.

    ``rho`` must lie in the closed half-plane where the family is
    analytic (upper for A and B, lower for ATIL and BTIL).  With the
    default ``x_index`` the solution is evaluated at x = 0; any other
    node requires a table built with ``keep_fields=True``.

    Returns the two components as a tuple.
    """
    from .errors import DomainError
    from .mobius import mobius_z, mobius_ztil

    rho = complex(rho)
    upper = table.family in _UPPER_FAMILIES
    if upper and rho.imag < 0.0:
        raise DomainError(
            f"family {table.family.name} is analytic in the upper "
            f"half-plane; got rho={rho}"
        )
    if not upper and rho.imag > 0.0:
        raise DomainError(
            f"family {table.family.name} is analytic in the lower "
            f"half-plane; got rho={rho}"
        )

    if x_index is None:
        x_index = table.grid.zero_index
    if x_index == table.grid.zero_index and table.fields is None:
        c1 = table.c1_at_zero
        c2 = table.c2_at_zero
    else:
        c1 = table.field("c1")[:, x_index]
        c2 = table.field("c2")[:, x_index]
    x = table.grid.nodes[x_index]

    w = mobius_z(rho) if upper else mobius_ztil(rho)
    powers = np.power(-w, np.arange(table.order + 1))
    s1 = (w + 1.0) * np.dot(powers, c1)
    s2 = (w + 1.0) * np.dot(powers, c2)

    if table.family is Family.A:
        phase = np.exp(1j * rho * x)
        return phase * s1, phase * (1.0 + s2)
    if table.family is Family.B:
        phase = np.exp(-1j * rho * x)
        return phase * (1.0 + s1), phase * s2
    if table.family is Family.ATIL:
        phase = np.exp(-1j * rho * x)
        return phase * (1.0 + s1), phase * s2
    phase = np.exp(1j * rho * x)
    return phase * s1, phase * (-1.0 + s2)

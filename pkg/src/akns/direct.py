"""Direct scattering: transfer entries, eigenvalues, norming constants.

The four truncated coefficient series evaluated at x = 0 give the Jost
solutions there; Wronskian combinations then yield the transfer
coefficients a, atil, b, btil for any real rho.  Eigenvalues are the
roots of the degree-(2N+2) polynomial obtained by expanding the same
Wronskian product symbolically in z (or ztil), kept only strictly
inside the unit disk and mapped back to the spectral plane.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from numpy.polynomial import polynomial as npoly

import numpy as np

from .errors import (
    DegenerateError,
    DegenerateQuotient,
    ShapeError,
)
from .mobius import mobius_z, mobius_ztil, rho_of_z, rho_of_ztil
from .numerics import Polynomial, polynomial_roots
from .serialize import fmt
from .spps import CoefficientTable, Family, compute_family, evaluate_jost

__all__ = [
    "ScatteringSample",
    "DiscreteDatum",
    "ScatteringData",
    "scattering_entries",
    "find_eigenvalues",
    "norming_constants",
    "solve_direct",
    "uniform_rho",
    "log_symmetric_rho",
    "write_scattering_csv",
    "read_scattering_csv",
    "write_discrete_json",
    "read_discrete_json",
]

#: Roots with |z| > 1 - DISK_MARGIN are treated as continuous-spectrum
#: artifacts of truncation and discarded.
DISK_MARGIN = 1e-6
#: A kept root must re-evaluate the eigenvalue polynomial below this.
ROOT_RESIDUAL_TOL = 1e-7
#: Below this modulus the first-component norming quotient falls back
#: to the second components.
QUOTIENT_FLOOR = 1e-8


@dataclass(frozen=True)
class ScatteringSample:
    """Transfer coefficients at one real rho."""

    rho: float
    z: complex
    ztil: complex
    a: complex
    atil: complex
    b: complex
    btil: complex

    @property
    def unitarity_residual(self) -> float:
        """|a*atil + b*btil - 1|; an accuracy indicator, zero exactly."""
        return abs(self.a * self.atil + self.b * self.btil - 1.0)


@dataclass(frozen=True)
class DiscreteDatum:
    """One eigenvalue with its norming constant (``c_m`` may be None
    before :func:`norming_constants` fills it)."""

    rho_m: complex
    c_m: complex | None
    half_plane: str


@dataclass(frozen=True)
class ScatteringData:
    """Continuum samples plus the two discrete families."""

    samples: list[ScatteringSample]
    upper: list[DiscreteDatum]
    lower: list[DiscreteDatum]

    def __post_init__(self) -> None:
        rhos = [s.rho for s in self.samples]
        if any(b <= a for a, b in zip(rhos, rhos[1:])):
            raise ShapeError("continuum samples must be sorted by rho")
        for d in self.upper:
            if d.rho_m.imag <= 0.0:
                raise ShapeError(f"upper datum with Im rho <= 0: {d.rho_m}")
        for d in self.lower:
            if d.rho_m.imag >= 0.0:
                raise ShapeError(f"lower datum with Im rho >= 0: {d.rho_m}")


def _check_tables(tables: dict[Family, CoefficientTable]) -> int:
    try:
        four = [tables[f] for f in Family]
    except KeyError as missing:
        raise ShapeError(f"missing coefficient table: {missing}") from None
    orders = {t.order for t in four}
    if len(orders) != 1:
        raise ShapeError(f"tables disagree on order: {sorted(orders)}")
    return orders.pop()


def _signed(values: np.ndarray) -> np.ndarray:
    signs = np.ones(values.size)
    signs[1::2] = -1.0
    return values * signs


def _series_sums(table: CoefficientTable, w: np.ndarray):
    """(w+1) * sum_n (-w)^n c_{i,n}(0) for both component streams."""
    s1 = npoly.polyval(w, _signed(table.c1_at_zero))
    s2 = npoly.polyval(w, _signed(table.c2_at_zero))
    return (w + 1.0) * s1, (w + 1.0) * s2


def scattering_entries(
    tables: dict[Family, CoefficientTable], rho_list
) -> list[ScatteringSample]:
    """Evaluate a, atil, b, btil at each real rho via the x=0 series."""
    _check_tables(tables)
    rho_arr = np.asarray(rho_list, dtype=float)
    z = np.asarray(mobius_z(rho_arr))
    ztil = np.asarray(mobius_ztil(rho_arr))

    sa1, sa2 = _series_sums(tables[Family.A], z)
    sb1, sb2 = _series_sums(tables[Family.B], z)
    sat1, sat2 = _series_sums(tables[Family.ATIL], ztil)
    sbt1, sbt2 = _series_sums(tables[Family.BTIL], ztil)

    # Jost values at x=0: psi=(sa1, 1+sa2), phi=(1+sb1, sb2),
    # psitil=(1+sat1, sat2), phitil=(sbt1, -1+sbt2)
    a = (1.0 + sb1) * (1.0 + sa2) - sb2 * sa1
    atil = sbt1 * sat2 + (1.0 - sbt2) * (1.0 + sat1)
    b = sb2 * (1.0 + sat1) - (1.0 + sb1) * sat2
    btil = sbt1 * (1.0 + sa2) + (1.0 - sbt2) * sa1

    return [
        ScatteringSample(
            rho=float(rho_arr[k]), z=complex(z[k]), ztil=complex(ztil[k]),
            a=complex(a[k]), atil=complex(atil[k]),
            b=complex(b[k]), btil=complex(btil[k]),
        )
        for k in range(rho_arr.size)
    ]


def _one_plus(poly: np.ndarray) -> np.ndarray:
    return npoly.polyadd(np.array([1.0 + 0j]), poly)


def _eigen_polynomial(t_anchor: CoefficientTable,
                      t_cross: CoefficientTable,
                      flip: bool) -> np.ndarray:
    """Expand the transfer coefficient as a polynomial in the disk
    variable by coefficient convolution.

    ``t_anchor`` is the family normalised at the same edge as the
    continuum variable (A for the upper product, ATIL for the lower),
    ``t_cross`` the opposite-edge partner (B, BTIL); ``flip`` selects
    the lower-half-plane sign pattern of atil.
    """
    lin = np.array([1.0 + 0j, 1.0 + 0j])  # (1 + w)
    anchor1 = npoly.polymul(lin, _signed(t_anchor.c1_at_zero))
    anchor2 = npoly.polymul(lin, _signed(t_anchor.c2_at_zero))
    cross1 = npoly.polymul(lin, _signed(t_cross.c1_at_zero))
    cross2 = npoly.polymul(lin, _signed(t_cross.c2_at_zero))
    if not flip:
        # a(z) = (1 + B1)(1 + A2) - B2 A1
        return npoly.polysub(
            npoly.polymul(_one_plus(cross1), _one_plus(anchor2)),
            npoly.polymul(cross2, anchor1),
        )
    # atil(ztil) = BT1 AT2 + (1 - BT2)(1 + AT1)
    return npoly.polyadd(
        npoly.polymul(cross1, anchor2),
        npoly.polymul(
            npoly.polysub(np.array([1.0 + 0j]), cross2),
            _one_plus(anchor1),
        ),
    )


def _disk_roots(poly: np.ndarray):
    try:
        roots = polynomial_roots(Polynomial(poly))
    except DegenerateError:
        return []
    inside = [z for z in roots if abs(z) <= 1.0 - DISK_MARGIN]
    return [z for z in inside
            if abs(npoly.polyval(z, poly)) <= ROOT_RESIDUAL_TOL]


def find_eigenvalues(
    tables: dict[Family, CoefficientTable]
) -> tuple[list[DiscreteDatum], list[DiscreteDatum]]:
    """Locate the zeros of a in C+ and of atil in C-.

    Returns (upper, lower) lists sorted by increasing imaginary part,
    with norming constants not yet filled.
    """
    _check_tables(tables)
    a_poly = _eigen_polynomial(tables[Family.A], tables[Family.B], False)
    atil_poly = _eigen_polynomial(tables[Family.ATIL], tables[Family.BTIL],
                                  True)

    def build(poly, mapper, half_plane):
        data = [
            DiscreteDatum(rho_m=mapper(zm), c_m=None, half_plane=half_plane)
            for zm in _disk_roots(poly)
        ]
        data.sort(key=lambda d: (d.rho_m.imag, d.rho_m.real))
        return data

    return (build(a_poly, rho_of_z, "upper"),
            build(atil_poly, rho_of_ztil, "lower"))


def norming_constants(
    tables: dict[Family, CoefficientTable],
    eigen: list[DiscreteDatum],
) -> list[DiscreteDatum]:
    """Fill c_m = phi1/psi1 (upper) or phitil1/psitil1 (lower) at each
    eigenvalue, falling back to the second-component quotient when the
    first-component denominator is degenerate."""
    _check_tables(tables)
    out = []
    for datum in eigen:
        if datum.half_plane == "upper":
            num = evaluate_jost(tables[Family.B], datum.rho_m)
            den = evaluate_jost(tables[Family.A], datum.rho_m)
        else:
            num = evaluate_jost(tables[Family.BTIL], datum.rho_m)
            den = evaluate_jost(tables[Family.ATIL], datum.rho_m)
        if abs(den[0]) >= QUOTIENT_FLOOR:
            c = num[0] / den[0]
        elif abs(den[1]) >= QUOTIENT_FLOOR:
            c = num[1] / den[1]
        else:
            raise DegenerateQuotient(
                f"both Jost components below {QUOTIENT_FLOOR:.1e} at "
                f"rho={datum.rho_m}"
            )
        out.append(DiscreteDatum(rho_m=datum.rho_m, c_m=c,
                                 half_plane=datum.half_plane))
    return out


def solve_direct(pair, seeds, order: int, rho_list) -> tuple[
    dict[Family, CoefficientTable], ScatteringData
]:
    """Run the four recurrences and assemble full scattering data."""
    tables = {
        fam: compute_family(fam, pair, seeds, order) for fam in Family
    }
    samples = scattering_entries(tables, rho_list)
    upper, lower = find_eigenvalues(tables)
    upper = norming_constants(tables, upper)
    lower = norming_constants(tables, lower)
    return tables, ScatteringData(samples=samples, upper=upper, lower=lower)


def uniform_rho(rho_min: float, rho_max: float, count: int) -> np.ndarray:
    """count uniform sample points on [rho_min, rho_max]."""
    if count < 2 or rho_max <= rho_min:
        raise ValueError("need count >= 2 and rho_max > rho_min")
    return np.linspace(rho_min, rho_max, count)


def log_symmetric_rho(min_exp: float, max_exp: float,
                      count: int) -> np.ndarray:
    """count points placed as +-10^u, u uniform on [min_exp, max_exp].

    count must be even (half per sign); the result is ascending and
    avoids rho = 0.
    """
    if count < 2 or count % 2:
        raise ValueError("log-symmetric sampling needs an even count >= 2")
    if max_exp <= min_exp:
        raise ValueError("need max_exp > min_exp")
    pos = np.power(10.0, np.linspace(min_exp, max_exp, count // 2))
    return np.concatenate([-pos[::-1], pos])


def write_scattering_csv(samples: list[ScatteringSample], path) -> None:
    """Continuum samples as CSV with round-trip float formatting."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([
            "rho", "re_a", "im_a", "re_atil", "im_atil",
            "re_b", "im_b", "re_btil", "im_btil",
        ])
        for s in samples:
            writer.writerow([
                fmt(s.rho),
                fmt(s.a.real), fmt(s.a.imag),
                fmt(s.atil.real), fmt(s.atil.imag),
                fmt(s.b.real), fmt(s.b.imag),
                fmt(s.btil.real), fmt(s.btil.imag),
            ])


def read_scattering_csv(path) -> list[ScatteringSample]:
    """Parse the continuum CSV; z and ztil are recomputed from rho."""
    samples = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            rho = float(row["rho"])
            samples.append(ScatteringSample(
                rho=rho, z=mobius_z(rho), ztil=mobius_ztil(rho),
                a=complex(float(row["re_a"]), float(row["im_a"])),
                atil=complex(float(row["re_atil"]), float(row["im_atil"])),
                b=complex(float(row["re_b"]), float(row["im_b"])),
                btil=complex(float(row["re_btil"]), float(row["im_btil"])),
            ))
    return samples


def write_discrete_json(upper: list[DiscreteDatum],
                        lower: list[DiscreteDatum], path) -> None:
    """Discrete data as {"upper": [{"rho": [re, im], "c": [re, im]}], ...}."""
    def block(data):
        out = []
        for d in data:
            if d.c_m is None:
                raise ShapeError("cannot serialize datum without c_m")
            out.append({"rho": [d.rho_m.real, d.rho_m.imag],
                        "c": [d.c_m.real, d.c_m.imag]})
        return out

    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"upper": block(upper), "lower": block(lower)}, fh,
                  indent=2)
        fh.write("\n")


def read_discrete_json(path) -> tuple[list[DiscreteDatum],
                                      list[DiscreteDatum]]:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)

    def block(entries, half_plane):
        return [
            DiscreteDatum(
                rho_m=complex(e["rho"][0], e["rho"][1]),
                c_m=complex(e["c"][0], e["c"][1]),
                half_plane=half_plane,
            )
            for e in entries
        ]

    return (block(payload.get("upper", []), "upper"),
            block(payload.get("lower", []), "lower"))

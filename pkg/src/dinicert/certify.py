"""Certification of w_{a,nu}: starlike with all derivatives close-to-convex.

By the Shah-Trimble characterization, for an entire function
z * prod(1 - z/z_n) whose zeros z_n share one argument and have modulus
above 1, starlikeness on the unit disk together with close-to-convexity
of every derivative holds exactly when sum 1/(|z_n| - 1) <= 1.  For
w_{a,nu} the zeros are z_n = omega_n^2, so the hypothesis reads
omega_1 > 1 and the sum is S(a,nu).

The decision is made on the closed-form sum (exact up to Bessel
evaluation error) while the truncated sum with its tail bound is
attached as an independent enclosure; disk sampling of Re(z w'/w) and a
product-versus-series factorization check provide corroborating
numerical evidence, not proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bessel import _w_sum
from .criterion import BOUNDARY_BAND, SumCriterion, evaluate_criterion, sum_closed
from .errors import DomainError, NumericFailure, PoleError
from .families import DiniFamily
from .zeros import ZeroTable, find_zeros, ismail_lower_bound

GRID_RADII = 64
GRID_ANGLES = 720
GRID_MAX_RADIUS = 0.99

VERDICT_CERTIFIED = "certified"
VERDICT_REFUTED = "refuted"
VERDICT_INAPPLICABLE = "inapplicable"
VERDICT_BOUNDARY = "boundary"


@dataclass(frozen=True)
class GridSpec:
    radii: int
    angles: int
    max_radius: float

    def to_dict(self) -> dict:
        return {"radii": self.radii, "angles": self.angles,
                "max_radius": self.max_radius}

    @classmethod
    def from_dict(cls, d: dict) -> "GridSpec":
        return cls(int(d["radii"]), int(d["angles"]), float(d["max_radius"]))


@dataclass(frozen=True)
class FactorizationCheck:
    """Max deviation between the w series and its truncated zero product."""

    n_zeros: int
    max_deviation: float
    envelope: float

    @property
    def within_envelope(self) -> bool:
        return self.max_deviation <= self.envelope


@dataclass(frozen=True)
class CertReport:
    """Certification verdict with margins and sampling evidence."""

    family: DiniFamily
    verdict: str
    sum_criterion: SumCriterion | None
    smallest_zero_margin: float
    min_re_starlike: float | None
    grid: GridSpec
    zero_at_unit_radius: bool = False

    def to_dict(self) -> dict:
        return {
            "family": self.family.to_dict(),
            "verdict": self.verdict,
            "sum_criterion": None if self.sum_criterion is None
            else self.sum_criterion.to_dict(),
            "smallest_zero_margin": self.smallest_zero_margin,
            "min_re_starlike": self.min_re_starlike,
            "grid": self.grid.to_dict(),
            "zero_at_unit_radius": self.zero_at_unit_radius,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CertReport":
        sc = d["sum_criterion"]
        mr = d["min_re_starlike"]
        return cls(
            DiniFamily.from_dict(d["family"]),
            str(d["verdict"]),
            None if sc is None else SumCriterion.from_dict(sc),
            float(d["smallest_zero_margin"]),
            None if mr is None else float(mr),
            GridSpec.from_dict(d["grid"]),
            bool(d["zero_at_unit_radius"]),
        )


def default_radii(count: int = GRID_RADII, max_radius: float = GRID_MAX_RADIUS) -> list[float]:
    return [max_radius * (k + 1) / count for k in range(count)]


def _disk_grid(radii, thetas) -> np.ndarray:
    r = np.asarray(radii, dtype=float)
    t = np.asarray(thetas, dtype=float)
    return r[:, None] * np.exp(1j * t[None, :])


def starlike_sample(family: DiniFamily, radii, angles_count: int) -> float:
    """Minimum of Re(z w'(z) / w(z)) over the polar grid.

    The series has real coefficients, so the functional is symmetric in
    theta -> -theta; for an even angle count only theta in [0, pi] is
    evaluated, which covers the full grid's minimum exactly.
    """
    radii = [float(r) for r in radii]
    if not radii or min(radii) <= 0.0 or max(radii) >= 1.0:
        raise DomainError("radii must be a nonempty list inside (0, 1)")
    m = int(angles_count)
    if m < 4:
        raise DomainError("angles_count must be at least 4")
    if m % 2 == 0:
        thetas = [2.0 * math.pi * j / m for j in range(m // 2 + 1)]
    else:
        thetas = [2.0 * math.pi * j / m for j in range(m)]
    z = _disk_grid(radii, thetas)
    w = _w_sum(family.a, family.nu, z, derivative=False)
    wp = _w_sum(family.a, family.nu, z, derivative=True)
    wabs = np.abs(w)
    if float(wabs.min()) < 1e-14:
        i = np.unravel_index(int(np.argmin(wabs)), wabs.shape)
        raise NumericFailure(
            f"grid fault: |w| below 1e-14 at z={z[i]!r}; a zero meets the grid")
    func = np.real(z * wp / w)
    return float(func.min())


def factorization_check(family: DiniFamily, n_zeros: int = 18,
                        max_radius: float = 0.9, n_radii: int = 16,
                        n_angles: int = 96,
                        table: ZeroTable | None = None) -> FactorizationCheck:
    """Compare the w series against z * prod_{n<=N} (1 - z / omega_n^2).

    The deviation must stay below the first-order truncation envelope
    C * |z|_max * sum_{n>N} 1/omega_n^2, where C is the max modulus of
    the partial product on the grid and the tail sum is bounded through
    the observed zero spacing (capped at pi) by integral comparison.
    """
    if not 0.0 < max_radius < 1.0:
        raise DomainError("max_radius must lie in (0, 1)")
    if table is None or len(table) < n_zeros:
        table = find_zeros(family, n_zeros)
    zs = np.array(table.zeros[:n_zeros])
    radii = [max_radius * (k + 1) / n_radii for k in range(n_radii)]
    thetas = [2.0 * math.pi * j / n_angles for j in range(n_angles // 2 + 1)]
    z = _disk_grid(radii, thetas)
    w = _w_sum(family.a, family.nu, z, derivative=False)
    prod = z * np.prod(1.0 - z[..., None] / (zs * zs), axis=-1)
    deviation = float(np.max(np.abs(w - prod)))
    spacing = min(math.pi, table.min_spacing())
    tail_sum = 1.0 / (spacing * zs[-1])  # >= sum_{n>N} 1/omega_n^2
    envelope = float(np.max(np.abs(prod))) * max_radius * tail_sum
    return FactorizationCheck(n_zeros, deviation, envelope)


def certify(family: DiniFamily, zero_count: int = 12) -> CertReport:
    """Shah-Trimble verdict for w_{a,nu} with corroborating evidence.

    certified    omega_1 > 1 and S <= 1
    refuted      omega_1 > 1 and S > 1
    inapplicable omega_1 <= 1 (the modulus hypothesis fails; no sum)
    boundary     |S - 1| <= 1e-9, or a Dini zero sits at radius 1

    The Ismail bound serves as a fast path: when 4a(nu+1)/(a+2) > 1 the
    modulus hypothesis holds without refining any zero.
    """
    grid = GridSpec(GRID_RADII, GRID_ANGLES, GRID_MAX_RADIUS)

    # A Dini zero numerically at radius 1 makes the criterion ill-posed;
    # decide that first so the verdict does not hinge on which side of 1
    # the refined zero happens to round to.
    try:
        sum_closed(family)
    except PoleError:
        omega1 = find_zeros(family, 1).entries[0].zero
        return CertReport(family, VERDICT_BOUNDARY, None, omega1 - 1.0, None,
                          grid, zero_at_unit_radius=True)

    bound = ismail_lower_bound(family)
    if bound <= 1.0:
        # The analytic bound does not decide; measure the first zero.
        omega1 = find_zeros(family, 1).entries[0].zero
        if omega1 <= 1.0:
            return CertReport(family, VERDICT_INAPPLICABLE, None,
                              omega1 - 1.0, None, grid)

    table = find_zeros(family, max(zero_count, 2))
    omega1 = table.entries[0].zero
    if omega1 <= 1.0:
        return CertReport(family, VERDICT_INAPPLICABLE, None,
                          omega1 - 1.0, None, grid)
    margin = omega1 - 1.0

    crit = evaluate_criterion(family, n_terms=zero_count, table=table)

    min_re = starlike_sample(family, default_radii(grid.radii, grid.max_radius),
                             grid.angles)
    s = crit.closed_value
    if abs(s - 1.0) <= BOUNDARY_BAND:
        verdict = VERDICT_BOUNDARY
    elif s <= 1.0:
        verdict = VERDICT_CERTIFIED
    else:
        verdict = VERDICT_REFUTED
    return CertReport(family, verdict, crit, margin, min_re, grid)

"""Census of longitudinal acoustic modes of a rectangular bulk.

A periodic rectangular box of edges (L1, L2, L3) carries one longitudinal
mode per discrete wave vector k = 2 pi (n1/L1, n2/L2, n3/L3) with integer
n, k != 0, and dispersion omega_k = c_l |k|.  Each mode is classified
against the Newton-oscillator frequency omega_G of the material:
decoherence dominates where c_l k is well below omega_G, elasticity
dominates well above, with "well" operationalized by a margin factor (a
margin of 10 reads the strict-separation condition as one decade).

The census also counts modes with inverse wavenumber above a cutoff
wavelength via the continuum k-space density V/(2 pi)^3, which gives
V k_c^3 / (6 pi^2) modes below k_c; an exact lattice count agrees up to
surface terms.  The ratio of that count to the number of nuclei is the
lever that a long-wavelength-only variant of the decoherence model uses to
suppress bulk heating.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import EnumerationLimitError, ValidationError
from .material import FNucl, Material, derive_scales

__all__ = [
    "BoxSpec",
    "ModeClass",
    "ModeSpec",
    "ModeCensus",
    "enumerate_modes",
    "count_modes_below",
    "census_summary",
]

# enumerate_modes materializes one ModeSpec per k-vector; above this many,
# counting must go through count_modes_below instead.
DEFAULT_ENUMERATION_LIMIT = 2_000_000

# Modes landing on |k| = k_max up to rounding are kept.
_BOUNDARY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class BoxSpec:
    """Rectangular periodic box; edge lengths in cm."""

    edge_lengths: tuple[float, float, float]
    boundary: str = "periodic"

    def __post_init__(self) -> None:
        edges = tuple(float(e) for e in self.edge_lengths)
        if len(edges) != 3:
            raise ValidationError("edge_lengths must have exactly three entries")
        if not all(math.isfinite(e) and e > 0 for e in edges):
            raise ValidationError(f"edge lengths must be finite and positive, got {edges}")
        if self.boundary != "periodic":
            raise ValidationError('only boundary="periodic" is supported')
        object.__setattr__(self, "edge_lengths", edges)

    @property
    def volume(self) -> float:
        e = self.edge_lengths
        return e[0] * e[1] * e[2]


class ModeClass(enum.Enum):
    """Three-way dominance classification, ordered by wavenumber."""

    DECOHERENCE_DOMINATED = "decoherence-dominated"
    CROSSOVER = "crossover"
    ELASTICITY_DOMINATED = "elasticity-dominated"


_CLASS_ORDER = {
    ModeClass.DECOHERENCE_DOMINATED: 0,
    ModeClass.CROSSOVER: 1,
    ModeClass.ELASTICITY_DOMINATED: 2,
}


def mode_class_order(cls: ModeClass) -> int:
    """Position in the order decoherence-dominated < crossover < elasticity-dominated."""
    return _CLASS_ORDER[cls]


@dataclass(frozen=True)
class ModeSpec:
    """One longitudinal mode: wave vector (cm^-1), |k|, omega_k = c_l |k| (rad/s)."""

    k_vector: tuple[float, float, float]
    k_mag: float
    omega_k: float
    classification: ModeClass


def classify(k_mag: float, c_l: float, omega_G: float, dominance_margin: float) -> ModeClass:
    """Classify a wavenumber against the Newton-oscillator frequency."""
    if c_l * k_mag * dominance_margin < omega_G:
        return ModeClass.DECOHERENCE_DOMINATED
    if c_l * k_mag > dominance_margin * omega_G:
        return ModeClass.ELASTICITY_DOMINATED
    return ModeClass.CROSSOVER


def enumerate_modes(
    box: BoxSpec,
    mat: Material,
    k_max: float,
    dominance_margin: float = 10.0,
    which_f_nucl: FNucl = FNucl.ACOUSTIC,
    enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> list[ModeSpec]:
    """All modes with 0 < |k| <= k_max, sorted by (k_mag, k_vector).

    k_max must exceed the smallest nonzero wavenumber 2 pi / max(edge) so the
    census is non-empty; dominance_margin >= 1.  Raises EnumerationLimitError
    when the census would exceed enumeration_limit modes.
    """
    if not (math.isfinite(k_max) and k_max > 2.0 * math.pi / max(box.edge_lengths)):
        raise ValidationError(
            f"k_max must exceed 2 pi / max(edge) = {2.0 * math.pi / max(box.edge_lengths)!r}, got {k_max!r}"
        )
    if not (math.isfinite(dominance_margin) and dominance_margin >= 1.0):
        raise ValidationError(f"dominance_margin must be >= 1, got {dominance_margin!r}")
    scales = derive_scales(mat, which_f_nucl)
    omega_G = scales.omega_G_nucl

    spacing = [2.0 * math.pi / e for e in box.edge_lengths]
    n_ranges = [int(math.floor(k_max * (1.0 + _BOUNDARY_TOLERANCE) / dk)) for dk in spacing]
    grid_points = (2 * n_ranges[0] + 1) * (2 * n_ranges[1] + 1) * (2 * n_ranges[2] + 1)
    if grid_points > 16 * enumeration_limit:
        raise EnumerationLimitError(
            f"candidate grid of {grid_points} k-points is far beyond the enumeration limit "
            f"{enumeration_limit}; use count_modes_below for counting at this k_max"
        )

    axes = [np.arange(-n, n + 1) * dk for n, dk in zip(n_ranges, spacing)]
    kx, ky, kz = np.meshgrid(*axes, indexing="ij")
    k_mag = np.sqrt(kx**2 + ky**2 + kz**2)
    keep = (k_mag > 0.0) & (k_mag <= k_max * (1.0 + _BOUNDARY_TOLERANCE))
    if int(np.count_nonzero(keep)) > enumeration_limit:
        raise EnumerationLimitError(
            f"census of {int(np.count_nonzero(keep))} modes exceeds the enumeration limit "
            f"{enumeration_limit}; use count_modes_below for counting at this k_max"
        )
    columns = np.stack([k_mag[keep], kx[keep], ky[keep], kz[keep]], axis=1)
    order = np.lexsort((columns[:, 3], columns[:, 2], columns[:, 1], columns[:, 0]))
    columns = columns[order]

    c_l = mat.c_l
    modes = []
    for mag, x, y, z in columns:
        modes.append(
            ModeSpec(
                k_vector=(float(x), float(y), float(z)),
                k_mag=float(mag),
                omega_k=c_l * float(mag),
                classification=classify(float(mag), c_l, omega_G, dominance_margin),
            )
        )
    return modes


def count_modes_below(box_volume: float, inv_k_cutoff: float) -> int:
    """Continuum count of modes with |k| <= 1/inv_k_cutoff: V k_c^3 / (6 pi^2).

    One longitudinal mode per k-point at density V/(2 pi)^3; rounded to the
    nearest integer.  An infinite cutoff counts zero modes.
    """
    if not (box_volume > 0.0 and math.isfinite(box_volume)):
        raise ValidationError(f"box_volume must be finite and positive, got {box_volume!r}")
    if not inv_k_cutoff > 0.0:
        raise ValidationError(f"inv_k_cutoff must be positive, got {inv_k_cutoff!r}")
    if math.isinf(inv_k_cutoff):
        return 0
    k_c = 1.0 / inv_k_cutoff
    return int(round(box_volume * k_c**3 / (6.0 * math.pi**2)))


def count_modes_lattice(box: BoxSpec, k_max: float) -> int:
    """Exact number of nonzero lattice k-points with |k| <= k_max.

    Plane-by-plane vectorized count; used to check the continuum estimate.
    """
    if not (math.isfinite(k_max) and k_max > 0.0):
        raise ValidationError(f"k_max must be finite and positive, got {k_max!r}")
    spacing = [2.0 * math.pi / e for e in box.edge_lengths]
    n1_max = int(math.floor(k_max / spacing[0]))
    count = 0
    for n1 in range(-n1_max, n1_max + 1):
        remainder_sq = k_max**2 - (n1 * spacing[0]) ** 2
        if remainder_sq < 0.0:
            continue
        n2_max = int(math.floor(math.sqrt(remainder_sq) / spacing[1]))
        n2_axis = np.arange(-n2_max, n2_max + 1)
        rest = remainder_sq - (n2_axis * spacing[1]) ** 2
        # floor guarantees rest >= 0 mathematically; clamp float rounding only
        rest[rest < 0.0] = 0.0
        count += int(np.sum(2 * np.floor(np.sqrt(rest) / spacing[2]).astype(np.int64) + 1))
    return count - 1  # remove the k = 0 point


@dataclass(frozen=True)
class ModeCensus:
    """Cutoff-count summary against the nuclei number of the same bulk."""

    total_modes_below_cutoff: int
    nuclei_count: int
    ratio: float
    dominance_boundary_inv_k: float


def census_summary(
    mat: Material,
    total_mass: float,
    volume: float,
    inv_k_cutoff: float,
    which_f_nucl: FNucl = FNucl.ACOUSTIC,
) -> ModeCensus:
    """Count modes below the cutoff and compare with the nuclei count M/m_av."""
    if not total_mass > 0.0:
        raise ValidationError(f"total_mass must be positive, got {total_mass!r}")
    total = count_modes_below(volume, inv_k_cutoff)
    nuclei = int(round(total_mass / mat.m_av))
    scales = derive_scales(mat, which_f_nucl)
    return ModeCensus(
        total_modes_below_cutoff=total,
        nuclei_count=nuclei,
        ratio=total / nuclei,
        dominance_boundary_inv_k=scales.lambda_dominance,
    )

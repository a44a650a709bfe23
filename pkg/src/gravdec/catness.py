"""Catness of a pair of smeared mass configurations and its decay time.

A configuration is a finite set of point masses, each smeared with the
shared Gaussian width sigma of the package convention.  For two
configurations f1, f2 the formal Newton interaction potential is

    U_ij = -G sum_{a in f_i} sum_{b in f_j} m_a m_b erf(d_ab / (2 sigma)) / d_ab   [erg],

where d_ab is the distance between the points; the d -> 0 limit of
erf(d/(2 sigma))/d is 1/(sigma sqrt(pi)).  The catness

    ell_G^2 = -U_11 - U_22 + 2 U_12 >= 0    [erg]

measures how macroscopically distinct the two mass distributions are, and
the superposition of the two decays on the timescale tau_G = hbar / ell_G^2.

The closed erf form is the primary path.  An independent quadrature oracle
evaluates the same double integral by discretizing the smeared densities on
a common grid and convolving with the 1/r kernel spectrally (free-space
convolution with a spherically truncated kernel), for verification only.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.fft import next_fast_len, rfftn
from scipy.special import erf

from .constants import constants
from .errors import ValidationError

__all__ = [
    "MassConfiguration",
    "CatnessResult",
    "QuadratureGrid",
    "pair_potential",
    "catness",
    "catness_quadrature_oracle",
    "mass_config_from_json",
    "mass_config_to_json",
]

# Below d = _COINCIDENT_FRACTION * sigma the ratio erf(d/(2 sigma))/d is
# evaluated by its analytic limit 1/(sigma sqrt(pi)); above it the direct
# quotient is numerically stable.
_COINCIDENT_FRACTION = 1e-6

# Refuse quadrature grids that would not resolve the smearing Gaussian.
_MAX_SPACING_FRACTION = 1.0 / 3.0

# Hard cap on quadrature grid cells, to fail loudly instead of swapping.
_MAX_GRID_CELLS = 120_000_000


@dataclass(eq=False)
class MassConfiguration:
    """Point masses (positions cm, masses g) sharing one smearing width sigma (cm)."""

    positions: np.ndarray  # shape (N, 3), cm
    masses: np.ndarray  # shape (N,), g
    sigma: float  # cm

    def __post_init__(self) -> None:
        positions = np.asarray(self.positions, dtype=float)
        masses = np.asarray(self.masses, dtype=float)
        if positions.ndim != 2 or positions.shape[1] != 3:
            raise ValidationError(f"positions must have shape (N, 3), got {positions.shape}")
        if masses.shape != (positions.shape[0],):
            raise ValidationError(
                f"masses must have shape ({positions.shape[0]},), got {masses.shape}"
            )
        if positions.shape[0] == 0:
            raise ValidationError("configuration must contain at least one point mass")
        if not np.all(np.isfinite(positions)):
            raise ValidationError("positions must be finite")
        if not (np.all(np.isfinite(masses)) and np.all(masses > 0)):
            raise ValidationError("masses must be finite and strictly positive")
        if not (isinstance(self.sigma, (int, float)) and math.isfinite(self.sigma) and self.sigma > 0):
            raise ValidationError(f"sigma must be a finite positive number, got {self.sigma!r}")
        self.positions = positions
        self.masses = masses
        self.sigma = float(self.sigma)

    def translated(self, shift) -> "MassConfiguration":
        """Rigidly translated copy (same masses, same sigma)."""
        shift = np.asarray(shift, dtype=float).reshape(3)
        return MassConfiguration(self.positions + shift, self.masses.copy(), self.sigma)


@dataclass(frozen=True)
class CatnessResult:
    """Formal Newton potentials (erg), catness ell_G^2 (erg), decay time tau_g (s)."""

    u11: float
    u22: float
    u12: float
    ell_g_sq: float
    tau_g: float


def _check_pairable(f1: MassConfiguration, f2: MassConfiguration) -> None:
    if f1.sigma != f2.sigma:
        raise ValidationError(
            f"configurations must share one smearing width, got {f1.sigma!r} and {f2.sigma!r}"
        )


def _canonical_key(config: MassConfiguration) -> tuple:
    return (config.positions.shape[0], config.positions.tobytes(), config.masses.tobytes())


def pair_potential(f1: MassConfiguration, f2: MassConfiguration) -> float:
    """Closed-form smeared Newton interaction potential U_12 in erg.

    The operands are put into a canonical order before summing, so exchanging
    f1 and f2 returns the bitwise-identical value.
    """
    _check_pairable(f1, f2)
    if _canonical_key(f2) < _canonical_key(f1):
        f1, f2 = f2, f1
    sigma = f1.sigma
    diff = f1.positions[:, None, :] - f2.positions[None, :, :]
    d = np.sqrt(np.sum(diff * diff, axis=2))
    near = d < _COINCIDENT_FRACTION * sigma
    d_safe = np.where(near, 1.0, d)
    kernel = np.where(near, 1.0 / (sigma * math.sqrt(math.pi)), erf(d_safe / (2.0 * sigma)) / d_safe)
    total = float(np.sum(f1.masses[:, None] * f2.masses[None, :] * kernel))
    return -constants().G * total


def _assemble(u11: float, u22: float, u12: float) -> CatnessResult:
    ell_g_sq = -u11 - u22 + 2.0 * u12
    tau_g = constants().hbar / ell_g_sq if ell_g_sq > 0.0 else math.inf
    return CatnessResult(u11=u11, u22=u22, u12=u12, ell_g_sq=ell_g_sq, tau_g=tau_g)


def catness(f1: MassConfiguration, f2: MassConfiguration) -> CatnessResult:
    """Catness ell_G^2 = -U_11 - U_22 + 2 U_12 and decay time hbar / ell_G^2.

    Identical configurations give ell_G^2 = 0 exactly and an infinite
    decay time.
    """
    _check_pairable(f1, f2)
    u11 = pair_potential(f1, f1)
    u22 = pair_potential(f2, f2)
    u12 = pair_potential(f1, f2)
    return _assemble(u11, u22, u12)


@dataclass(frozen=True)
class QuadratureGrid:
    """Grid for the quadrature oracle.

    spacing: cell edge h in cm; must resolve the smearing (h <= sigma / 3).
    margin:  empty border around the point cloud in cm; None means 6 sigma,
             and anything below 6 sigma is rejected because the Gaussians
             would be clipped.
    """

    spacing: float
    margin: float | None = None


def _smeared_density(points: np.ndarray, masses: np.ndarray, sigma: float, axes) -> np.ndarray:
    """Sample sum_a m_a g_sigma(r - x_a) on the tensor grid given by axes."""
    shape = tuple(ax.size for ax in axes)
    density = np.zeros(shape)
    norm_1d = 1.0 / math.sqrt(2.0 * math.pi * sigma * sigma)
    for point, mass in zip(points, masses):
        gauss = [
            norm_1d * np.exp(-((axes[i] - point[i]) ** 2) / (2.0 * sigma * sigma)) for i in range(3)
        ]
        density += mass * gauss[0][:, None, None] * gauss[1][None, :, None] * gauss[2][None, None, :]
    return density


def catness_quadrature_oracle(
    f1: MassConfiguration, f2: MassConfiguration, grid: QuadratureGrid
) -> CatnessResult:
    """Independent evaluation of U_11, U_22, U_12 by 3D numerical quadrature.

    Both smeared densities are sampled on one shared midpoint grid.  The
    Coulomb-type double integral is evaluated in Fourier space with the
    1/r kernel truncated at a radius R larger than any pair distance, which
    makes the periodic convolution exact for the free-space problem up to
    the grid discretization error; the grid is padded by R along each axis.
    Accuracy is far better than the documented 1e-4 bound once the spacing
    resolves sigma (the Gaussian spectrum decays faster than the kernel
    truncation introduces error).
    """
    _check_pairable(f1, f2)
    sigma = f1.sigma
    h = float(grid.spacing)
    if not (math.isfinite(h) and h > 0):
        raise ValidationError(f"grid spacing must be a positive number, got {grid.spacing!r}")
    # One-ulp slack so that sigma/3 computed by the caller passes the bound.
    if h > sigma * _MAX_SPACING_FRACTION * (1.0 + 1e-12):
        raise ValidationError(
            f"grid spacing {h!r} too coarse: must be <= sigma/3 = {sigma * _MAX_SPACING_FRACTION!r}"
        )
    margin = 6.0 * sigma if grid.margin is None else float(grid.margin)
    if margin < 6.0 * sigma * (1.0 - 1e-12):
        raise ValidationError(f"grid margin {margin!r} too small: must be >= 6 sigma")

    all_points = np.vstack([f1.positions, f2.positions])
    lo = all_points.min(axis=0) - margin
    hi = all_points.max(axis=0) + margin
    extent = hi - lo
    # Truncation radius: no pair of density-carrying cells is farther apart.
    radius = float(np.linalg.norm(extent))
    sizes = [next_fast_len(int(math.ceil((extent[i] + radius) / h)) + 2) for i in range(3)]
    n_total = sizes[0] * sizes[1] * sizes[2]
    if n_total > _MAX_GRID_CELLS:
        raise ValidationError(
            f"quadrature grid of {n_total} cells exceeds the {_MAX_GRID_CELLS} cell limit; "
            "use a coarser spacing or a smaller configuration"
        )
    axes = [lo[i] + (np.arange(sizes[i]) + 0.5) * h for i in range(3)]

    spectra = []
    for config in (f1, f2):
        density = _smeared_density(config.positions, config.masses, sigma, axes)
        spectra.append(rfftn(density))
        del density

    freqs = [2.0 * math.pi * np.fft.fftfreq(sizes[i], d=h) for i in range(2)]
    freqs.append(2.0 * math.pi * np.fft.rfftfreq(sizes[2], d=h))
    k_sq = (
        freqs[0][:, None, None] ** 2 + freqs[1][None, :, None] ** 2 + freqs[2][None, None, :] ** 2
    )
    with np.errstate(divide="ignore", invalid="ignore"):
        kernel_hat = 4.0 * math.pi * (1.0 - np.cos(np.sqrt(k_sq) * radius)) / k_sq
    kernel_hat[0, 0, 0] = 2.0 * math.pi * radius * radius

    # Real-input FFT stores only half of the last axis; double-count interior
    # planes to reproduce the full-spectrum Parseval sum.
    weights = np.full(sizes[2] // 2 + 1, 2.0)
    weights[0] = 1.0
    if sizes[2] % 2 == 0:
        weights[-1] = 1.0

    G = constants().G
    scale = -G * h**3 / n_total

    def overlap(i: int, j: int) -> float:
        integrand = (np.conj(spectra[i]) * spectra[j] * kernel_hat).real * weights
        return scale * float(np.sum(integrand))

    return _assemble(overlap(0, 0), overlap(1, 1), overlap(0, 1))


def mass_config_from_json(text: str) -> MassConfiguration:
    """Parse the configuration document {"sigma": s, "points": [{"r": [x,y,z], "m": m}]}.

    Unknown fields are rejected.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"configuration document is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValidationError("configuration document must be a JSON object")
    unknown = set(doc) - {"sigma", "points"}
    if unknown:
        raise ValidationError(f"unknown configuration fields: {sorted(unknown)}")
    if "sigma" not in doc or "points" not in doc:
        raise ValidationError('configuration document requires "sigma" and "points"')
    points = doc["points"]
    if not isinstance(points, list) or not points:
        raise ValidationError('"points" must be a non-empty list')
    positions = []
    masses = []
    for i, entry in enumerate(points):
        if not isinstance(entry, dict) or set(entry) != {"r", "m"}:
            raise ValidationError(f'point {i} must be an object with exactly "r" and "m"')
        r = entry["r"]
        if not (isinstance(r, list) and len(r) == 3 and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in r)):
            raise ValidationError(f'point {i} field "r" must be a list of three numbers')
        m = entry["m"]
        if isinstance(m, bool) or not isinstance(m, (int, float)):
            raise ValidationError(f'point {i} field "m" must be a number')
        positions.append([float(x) for x in r])
        masses.append(float(m))
    sigma = doc["sigma"]
    if isinstance(sigma, bool) or not isinstance(sigma, (int, float)):
        raise ValidationError('"sigma" must be a number')
    return MassConfiguration(np.array(positions), np.array(masses), float(sigma))


def mass_config_to_json(config: MassConfiguration) -> dict:
    """Configuration as a plain dict matching the documented schema."""
    return {
        "sigma": float(config.sigma),
        "points": [
            {"r": [float(x) for x in position], "m": float(mass)}
            for position, mass in zip(config.positions, config.masses)
        ],
    }

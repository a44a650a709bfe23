"""Bulk material parameters and the decoherence scales derived from them.

A homogeneous material is described by its bulk mass density f_a (g/cm^3),
the average constituent (nucleus) mass m_av (g), the average squared nucleus
mass m_sq_av (g^2), the smearing width sigma (cm) of the Gaussian mass
density, and the longitudinal sound velocity c_l (cm/s).

The Gaussian smearing convention used everywhere in this package is

    g_sigma(r) = (2 pi sigma^2)^(-3/2) exp(-r^2 / (2 sigma^2)),

whose self-overlap integral is (4 pi sigma^2)^(-3/2).  From it follow the
'nuclear' density (the mass of one constituent spread over its own smearing
volume), the Newton-oscillator angular frequency

    omega_G = sqrt(4 pi G f_nucl / 3)    [rad/s],

the dominance wavelength scale c_l / omega_G (the inverse wavenumber at
which elastic and decoherence rates cross), and the per-degree-of-freedom
heating rate hbar * omega_G^2 / 2.

Two variants of the nuclear density are exposed: the per-mass form
m_av / (4 pi sigma^2)^(3/2) and the mass-squared-weighted form
(m_sq_av / m_av) / (4 pi sigma^2)^(3/2) that arises when the displacement
field of a bulk is the dynamical variable.  Dynamics defaults to the
acoustic (mass-squared-weighted) variant; per-constituent heating uses the
simple one.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass

from .constants import AMU_G, constants
from .errors import ValidationError

__all__ = [
    "Material",
    "DerivedScales",
    "FNucl",
    "derive_scales",
    "material_presets",
    "material_from_json",
    "material_to_json",
]


class FNucl(enum.Enum):
    """Which 'nuclear' density normalizes the Newton oscillator."""

    SIMPLE = "simple"
    ACOUSTIC = "acoustic"


@dataclass(frozen=True)
class Material:
    """Homogeneous bulk matter in CGS units.

    mass_density: bulk density M/V, g/cm^3
    m_av:         average constituent mass, g
    m_sq_av:      average squared constituent mass <m^2>, g^2
    sigma:        smearing width of the mass density, cm
    c_l:          longitudinal sound velocity, cm/s
    """

    mass_density: float
    m_av: float
    m_sq_av: float
    sigma: float
    c_l: float

    def __post_init__(self) -> None:
        for name in ("mass_density", "m_av", "m_sq_av", "sigma", "c_l"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValidationError(f"Material.{name} must be a finite positive number, got {value!r}")
        # Cauchy-Schwarz for any distribution of species masses.
        if self.m_sq_av < self.m_av**2:
            raise ValidationError(
                f"Material.m_sq_av ({self.m_sq_av!r}) must be >= m_av^2 ({self.m_av**2!r})"
            )


@dataclass(frozen=True)
class DerivedScales:
    """Scales derived from a Material, CGS units.

    f_nucl_simple:    per-mass nuclear density, g/cm^3
    f_nucl_acoustic:  mass-squared-weighted nuclear density, g/cm^3
    omega_G_nucl:     Newton-oscillator angular frequency, rad/s
    lambda_dominance: c_l / omega_G_nucl, cm (inverse wavenumber at the
                      elasticity/decoherence crossover)
    heating_per_dof:  hbar * omega_G_nucl^2 / 2, erg/s
    """

    f_nucl_simple: float
    f_nucl_acoustic: float
    omega_G_nucl: float
    lambda_dominance: float
    heating_per_dof: float


def self_overlap(sigma: float) -> float:
    """Value of the smearing self-overlap integral (4 pi sigma^2)^(-3/2), cm^-3."""
    return (4.0 * math.pi * sigma**2) ** -1.5


def newton_oscillator_omega(f_nucl: float) -> float:
    """omega_G = sqrt(4 pi G f_nucl / 3) for a nuclear density in g/cm^3."""
    c = constants()
    return math.sqrt(4.0 * math.pi * c.G * f_nucl / 3.0)


def heating_per_dof_at(omega: float) -> float:
    """Spontaneous heating rate hbar * omega^2 / 2 (erg/s) of one degree of
    freedom whose momentum diffuses at the Newton-oscillator frequency omega."""
    return 0.5 * constants().hbar * omega**2


def derive_scales(mat: Material, which_f_nucl: FNucl = FNucl.ACOUSTIC) -> DerivedScales:
    """Compute all derived scales of a material.

    which_f_nucl selects the nuclear-density variant that feeds the
    Newton-oscillator frequency (both variants are always reported).
    Pure function: equal inputs give bitwise-equal outputs.
    """
    if not isinstance(which_f_nucl, FNucl):
        raise ValidationError(f"which_f_nucl must be a FNucl member, got {which_f_nucl!r}")
    overlap = self_overlap(mat.sigma)
    f_simple = mat.m_av * overlap
    f_acoustic = (mat.m_sq_av / mat.m_av) * overlap
    f_selected = f_simple if which_f_nucl is FNucl.SIMPLE else f_acoustic
    omega = newton_oscillator_omega(f_selected)
    return DerivedScales(
        f_nucl_simple=f_simple,
        f_nucl_acoustic=f_acoustic,
        omega_G_nucl=omega,
        lambda_dominance=mat.c_l / omega,
        heating_per_dof=heating_per_dof_at(omega),
    )


def _single_species(mass_density: float, m: float, sigma: float, c_l: float) -> Material:
    return Material(mass_density=mass_density, m_av=m, m_sq_av=m * m, sigma=sigma, c_l=c_l)


def material_presets() -> list[tuple[str, Material]]:
    """Built-in example materials.

    "paper-default" is the generic bulk used for all headline numbers:
    unit density, a single constituent species of 20 amu, sigma = 1e-12 cm
    (about the nuclear size) and c_l = 1e5 cm/s.  "rock" approximates SiO2
    (number-weighted nucleus masses over one Si and two O), "tungsten" is a
    heavy single-species metal.  Every preset passes derive_scales.
    """
    m_si = 28.0855 * AMU_G
    m_o = 15.999 * AMU_G
    rock_m_av = (m_si + 2.0 * m_o) / 3.0
    rock_m_sq = (m_si**2 + 2.0 * m_o**2) / 3.0
    return [
        ("paper-default", _single_species(1.0, 20.0 * AMU_G, 1e-12, 1e5)),
        (
            "rock",
            Material(mass_density=2.7, m_av=rock_m_av, m_sq_av=rock_m_sq, sigma=1e-12, c_l=6e5),
        ),
        ("tungsten", _single_species(19.3, 183.84 * AMU_G, 1e-12, 5.2e5)),
    ]


def preset(name: str) -> Material:
    """Look up a preset by name; raises ValidationError for unknown names."""
    for preset_name, mat in material_presets():
        if preset_name == name:
            return mat
    known = ", ".join(n for n, _ in material_presets())
    raise ValidationError(f"unknown material preset {name!r}; known presets: {known}")


_MATERIAL_FIELDS = ("mass_density", "m_av", "m_sq_av", "sigma", "c_l")


def material_from_json(text: str) -> tuple[str, Material]:
    """Parse a material document: the five Material fields plus "name".

    Unknown fields are rejected so that typos cannot silently change a run.
    Returns (name, Material).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"material document is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValidationError("material document must be a JSON object")
    expected = set(_MATERIAL_FIELDS) | {"name"}
    unknown = set(doc) - expected
    if unknown:
        raise ValidationError(f"unknown material fields: {sorted(unknown)}")
    missing = expected - set(doc)
    if missing:
        raise ValidationError(f"missing material fields: {sorted(missing)}")
    name = doc["name"]
    if not isinstance(name, str) or not name:
        raise ValidationError("material name must be a non-empty string")
    values = {}
    for field in _MATERIAL_FIELDS:
        value = doc[field]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValidationError(f"material field {field!r} must be a number, got {value!r}")
        values[field] = float(value)
    return name, Material(**values)


def material_to_json(name: str, mat: Material) -> dict:
    """Material as a plain dict in the documented field order, "name" first."""
    doc = {"name": name}
    doc.update({field: float(value) for field, value in asdict(mat).items()})
    return doc

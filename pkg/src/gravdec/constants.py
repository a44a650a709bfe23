"""Physical constants in CGS units.

Everything downstream takes G and hbar from here, so acceptance numbers are
reproducible bit for bit.  No unit system is enforced at runtime; each field
name documents its unit and the test suite checks dimensional identities
numerically.
"""

from dataclasses import dataclass

# CODATA 2018 values, expressed in CGS.
_G_CGS = 6.67430e-8  # cm^3 g^-1 s^-2
_HBAR_CGS = 1.054571817e-27  # erg s

# 1 unified atomic mass unit in grams, used by the material presets.
AMU_G = 1.66053906660e-24


@dataclass(frozen=True)
class PhysicalConstants:
    """Gravitational constant G (cm^3 g^-1 s^-2) and hbar (erg s)."""

    G: float
    hbar: float


_CONSTANTS = PhysicalConstants(G=_G_CGS, hbar=_HBAR_CGS)


def constants() -> PhysicalConstants:
    """Return the fixed CGS constants; repeated calls are bitwise identical."""
    return _CONSTANTS

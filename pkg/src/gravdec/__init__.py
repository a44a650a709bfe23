"""Gravity-related spontaneous decoherence of bulk matter.

Numerics for the Newtonian-self-interaction decoherence model: catness and
decay times of smeared mass configurations, derived material scales
(nuclear density, Newton-oscillator frequency), a census of longitudinal
acoustic modes with dominance classification, exact Gaussian-moment
evolution of the mode and center-of-mass master equations, a dense
number-basis oracle, and heating budgets for the standard and
wavelength-cutoff model variants.  CGS units throughout.
"""

__version__ = "0.1.0"

from .catness import (
    CatnessResult,
    MassConfiguration,
    QuadratureGrid,
    catness,
    catness_quadrature_oracle,
    mass_config_from_json,
    mass_config_to_json,
    pair_potential,
)
from .constants import AMU_G, PhysicalConstants, constants
from .errors import EnumerationLimitError, TruncationLeakageError, ValidationError
from .fock_oracle import (
    FockState,
    build_operators,
    cat_fock_state,
    coherence_decay_fock,
    coherent_fock_state,
    evolve_fock,
    excess_kurtosis_u,
    fock_energy,
    fock_ground,
    fock_moments,
    fock_moments_natural,
    validate_fock_state,
)
from .gaussian_dynamics import (
    ComState,
    GaussianState,
    ModeDynamicsParams,
    check_small_displacement_validity,
    com_kinetic_energy,
    com_superposition_decay_rate,
    evolve_com,
    evolve_com_axis,
    evolve_mode,
    evolve_mode_rk4,
    ground_state,
    minimum_uncertainty_com,
    mode_energy,
)
from .heating import HeatingBudget, budget_notes, cutoff_budget, per_mode_rate, standard_budget
from .material import (
    DerivedScales,
    FNucl,
    Material,
    derive_scales,
    material_from_json,
    material_presets,
    material_to_json,
    preset,
)
from .mode_census import (
    BoxSpec,
    ModeCensus,
    ModeClass,
    ModeSpec,
    census_summary,
    count_modes_below,
    count_modes_lattice,
    enumerate_modes,
    mode_class_order,
)

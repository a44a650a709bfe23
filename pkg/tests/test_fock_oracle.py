import math

import numpy as np
import pytest

from gravdec.constants import constants
from gravdec.errors import TruncationLeakageError, ValidationError
from gravdec.fock_oracle import (
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
from gravdec.gaussian_dynamics import GaussianState, ModeDynamicsParams, evolve_mode

HBAR = constants().hbar


def oracle_params(omega_k=1e3, omega_G=300.0, mode_mass=1.0):
    return ModeDynamicsParams(
        mode_mass=mode_mass, omega_k=omega_k, omega_G=omega_G, n_components=1
    )


def natural_factors(params):
    u_scale = math.sqrt(HBAR / (params.mode_mass * params.omega_k))
    pi_scale = math.sqrt(HBAR * params.mode_mass * params.omega_k)
    return np.array(
        [u_scale, pi_scale, u_scale**2, u_scale * pi_scale, pi_scale**2]
    )


def gaussian_from_fock(state):
    return GaussianState(*[float(v) for v in fock_moments(state)])


def rel(a, b):
    return abs(a - b) / abs(b)


# ------------------------------------------------------------- operators


def test_operator_basis_too_small_rejected():
    with pytest.raises(ValidationError):
        build_operators(3, oracle_params())


def test_hamiltonian_is_diagonal_with_oscillator_spectrum():
    params = oracle_params()
    n_max = 12
    _, _, H = build_operators(n_max, params)
    off = H - np.diag(np.diag(H))
    assert np.max(np.abs(off)) == 0.0
    # truncation corrupts the top of the band; the inner diagonal is exact
    for n in range(n_max - 2):
        assert rel(H[n, n].real, HBAR * params.omega_k * (n + 0.5)) < 1e-12


def test_canonical_commutator_on_inner_block():
    params = oracle_params()
    n_max = 16
    u, pi, _ = build_operators(n_max, params)
    comm = u @ pi - pi @ u
    expected = 1j * HBAR * np.eye(n_max)
    gap = np.max(np.abs((comm - expected)[: n_max - 2, : n_max - 2]))
    assert gap <= 1e-10 * HBAR


def test_oracle_requires_single_quadrature_and_stiffness():
    with pytest.raises(ValidationError):
        fock_ground(10, ModeDynamicsParams(1.0, 1e3, 300.0, n_components=3))
    with pytest.raises(ValidationError):
        fock_ground(10, ModeDynamicsParams(1.0, 0.0, 300.0, n_components=1))


# ------------------------------------------------------------- states


def test_ground_state_moments_and_energy():
    params = oracle_params()
    g = fock_ground(20, params)
    validate_fock_state(g)
    moments = fock_moments(g)
    expected = np.array(
        [
            0.0,
            0.0,
            HBAR / (2.0 * params.mode_mass * params.omega_k),
            0.0,
            HBAR * params.mode_mass * params.omega_k / 2.0,
        ]
    )
    assert np.max(np.abs(moments - expected)) <= 1e-12 * np.max(expected)
    assert rel(fock_energy(g), 0.5 * HBAR * params.omega_k) < 1e-12


def test_coherent_state_moments():
    params = oracle_params()
    alpha = 0.7 + 0.2j
    state = coherent_fock_state(30, params, alpha)
    validate_fock_state(state)
    natural = fock_moments_natural(state)
    assert abs(natural[0] - math.sqrt(2.0) * alpha.real) < 1e-12
    assert abs(natural[1] - math.sqrt(2.0) * alpha.imag) < 1e-12
    # coherent states keep the vacuum covariances
    assert abs(natural[2] - 0.5) < 1e-12
    assert abs(natural[3]) < 1e-12
    assert abs(natural[4] - 0.5) < 1e-12


def test_physical_moments_are_scaled_natural_moments():
    params = oracle_params(omega_k=2e3, mode_mass=0.5)
    state = coherent_fock_state(25, params, 0.4 - 0.9j)
    assert np.allclose(
        fock_moments(state),
        fock_moments_natural(state) * natural_factors(params),
        rtol=1e-13,
        atol=0.0,
    )


def test_cat_with_zero_separation_is_the_ground_state():
    params = oracle_params()
    cat = cat_fock_state(20, params, 0.0)
    ground = fock_ground(20, params)
    assert np.max(np.abs(cat.rho - ground.rho)) < 1e-14


def test_cat_separation_must_be_non_negative():
    with pytest.raises(ValidationError):
        cat_fock_state(20, oracle_params(), -1e-15)


def test_state_shape_validation():
    params = oracle_params()
    with pytest.raises(ValidationError):
        FockState(n_max=10, rho=np.eye(8, dtype=complex), params=params)


def test_validate_fock_state_catches_defects():
    params = oracle_params()
    good = fock_ground(10, params)
    bad_trace = FockState(10, good.rho * 2.0, params)
    with pytest.raises(ValidationError):
        validate_fock_state(bad_trace)
    skew = good.rho.copy()
    skew[0, 3] = 0.1
    with pytest.raises(ValidationError):
        validate_fock_state(FockState(10, skew, params))


# ------------------------------------------------------------- evolution


def test_ground_state_stationary_without_decoherence():
    params = oracle_params(omega_G=0.0)
    state = fock_ground(16, params)
    period = 2.0 * math.pi / params.omega_k
    evolved = evolve_fock(state, period, period / 1000.0)
    validate_fock_state(evolved)
    gap = np.max(np.abs(fock_moments_natural(evolved) - fock_moments_natural(state)))
    assert gap < 1e-10


def test_evolve_zero_time_returns_copy():
    params = oracle_params()
    state = fock_ground(12, params)
    out = evolve_fock(state, 0.0, 1e-9)
    assert out is not state
    assert np.array_equal(out.rho, state.rho)


def test_step_size_must_resolve_dynamics():
    params = oracle_params(omega_G=500.0)
    state = fock_ground(12, params)
    with pytest.raises(ValidationError):
        evolve_fock(state, 1e-3, 1e-2)
    with pytest.raises(ValidationError):
        evolve_fock(state, -1.0, 1e-6)
    with pytest.raises(ValidationError):
        evolve_fock(state, 1e-3, 0.0)


def test_heating_slope_matches_per_quadrature_rate():
    # n_max = 24: over a full period the thermal tail pumped by the diffusion
    # term reaches ~1e-6 by level 14, so 16 levels trip the leakage guard
    params = oracle_params(omega_G=500.0)
    state = fock_ground(24, params)
    t = 2.0 * math.pi / params.omega_k
    evolved = evolve_fock(state, t, 1e-5)
    validate_fock_state(evolved)
    slope = (fock_energy(evolved) - fock_energy(state)) / t
    assert rel(slope, 0.5 * HBAR * params.omega_G**2) < 1e-4


def test_moments_track_gaussian_closed_form_over_one_period():
    params = oracle_params(omega_k=1e3, omega_G=300.0)
    fock = coherent_fock_state(30, params, 0.7 + 0.2j)
    gauss0 = gaussian_from_fock(fock)
    period = 2.0 * math.pi / params.omega_k
    dt = period / 6000.0
    factors = natural_factors(params)
    worst = 0.0
    previous_t = 0.0
    for t in np.linspace(period / 8.0, period, 8):
        fock = evolve_fock(fock, float(t) - previous_t, dt)
        previous_t = float(t)
        gauss = evolve_mode(gauss0, params, float(t))
        gap = np.max(np.abs(fock_moments_natural(fock) - gauss.moments() / factors))
        worst = max(worst, float(gap))
    validate_fock_state(fock)
    assert worst < 1e-6


def test_basis_growth_does_not_move_the_moments():
    # n_max 20 -> 30 changes nothing above 1e-8 once the state fits
    params = oracle_params(omega_k=1e3, omega_G=300.0)
    period = 2.0 * math.pi / params.omega_k
    dt = period / 4000.0
    results = []
    for n_max in (20, 30):
        state = coherent_fock_state(n_max, params, 0.5)
        evolved = evolve_fock(state, period / 2.0, dt)
        results.append(fock_moments_natural(evolved))
    assert np.max(np.abs(results[0] - results[1])) < 1e-8


def test_gaussian_states_stay_gaussian():
    # excess displacement kurtosis stays at machine zero under evolution
    params = oracle_params(omega_k=1e3, omega_G=500.0)
    state = coherent_fock_state(30, params, 0.4)
    assert abs(excess_kurtosis_u(state)) < 1e-10
    period = 2.0 * math.pi / params.omega_k
    evolved = evolve_fock(state, period / 4.0, period / 4000.0)
    assert abs(excess_kurtosis_u(evolved)) < 1e-6


def test_truncation_leakage_aborts_loudly():
    params = oracle_params(omega_k=1e3, omega_G=1e3)
    u_scale = math.sqrt(HBAR / (params.mode_mass * params.omega_k))
    wide_cat = cat_fock_state(20, params, 10.0 * math.sqrt(2.0) * u_scale)
    with pytest.raises(TruncationLeakageError):
        evolve_fock(wide_cat, 1e-4, 1e-7)


# ------------------------------------------------------------- coherence


def test_coherence_of_coincident_packets_does_not_decay():
    params = oracle_params(omega_k=1e3, omega_G=1e3)
    times = np.array([0.0, 5e-10, 1e-9, 2e-9])
    values = coherence_decay_fock(params, 0.0, times, n_max=16)
    assert np.all(np.abs(values - 1.0) < 1e-5)


def test_coherence_constant_without_decoherence():
    # the measure projects on the fixed initial packet pair, so sample at
    # whole periods where free rotation returns the packets exactly
    params = oracle_params(omega_k=1e3, omega_G=0.0)
    u_scale = math.sqrt(HBAR / (params.mode_mass * params.omega_k))
    period = 2.0 * math.pi / params.omega_k
    times = np.array([0.0, period, 2.0 * period])
    values = coherence_decay_fock(params, 2.0 * u_scale, times, n_max=24)
    assert np.all(np.abs(values - 1.0) < 1e-9)


def test_coherence_decay_rate_close_to_separation_law():
    # d_nat = 6 sqrt(2): the packet-width correction to the rate is ~1/72
    params = oracle_params(omega_k=1e3, omega_G=1e3)
    u_scale = math.sqrt(HBAR / (params.mode_mass * params.omega_k))
    d = 6.0 * math.sqrt(2.0) * u_scale
    times = np.linspace(5e-5, 1.4e-3, 12) / params.omega_k
    values = coherence_decay_fock(params, d, times, n_max=34)
    slope = np.polyfit(times, -np.log(values), 1)[0]
    gamma = params.mode_mass * params.omega_G**2 * d**2 / (2.0 * HBAR)
    assert rel(slope, gamma) < 2.5e-2


def test_coherence_times_must_ascend():
    params = oracle_params()
    with pytest.raises(ValidationError):
        coherence_decay_fock(params, 0.0, np.array([1e-5, 5e-6]), n_max=16)
    with pytest.raises(ValidationError):
        coherence_decay_fock(params, 0.0, np.array([-1e-5, 5e-6]), n_max=16)

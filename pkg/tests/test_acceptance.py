"""Acceptance gate: one test per criterion, one printed line per criterion.

Run with `pytest tests/test_acceptance.py -s -v` to see the PASS/FAIL lines.
Each test prints its line before asserting, so a failure still reports the
measured values.
"""

import math
import time

import numpy as np
import scipy.linalg

from gravdec.catness import (
    MassConfiguration,
    QuadratureGrid,
    catness,
    catness_quadrature_oracle,
)
from gravdec.constants import constants
from gravdec.errors import ValidationError
from gravdec.fock_oracle import (
    FockState,
    coherence_decay_fock,
    coherent_fock_state,
    evolve_fock,
    fock_energy,
    fock_moments,
    fock_moments_natural,
    validate_fock_state,
)
from gravdec.gaussian_dynamics import (
    GaussianState,
    ModeDynamicsParams,
    com_superposition_decay_rate,
    evolve_mode,
    mode_energy,
)
from gravdec.heating import cutoff_budget, standard_budget
from gravdec.material import FNucl, Material, derive_scales, heating_per_dof_at, preset
from gravdec.mode_census import (
    BoxSpec,
    ModeClass,
    count_modes_lattice,
    enumerate_modes,
)

HBAR = constants().hbar
SIGMA = 1e-12


def report(num: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance] criterion {num:02d} {status}: {detail}")
    assert ok, f"criterion {num:02d}: {detail}"


def rel(a, b):
    return abs(a - b) / abs(b)


def single_mass(m, z=0.0):
    return MassConfiguration(np.array([[0.0, 0.0, z]]), np.array([m]), SIGMA)


def test_criterion_01_newton_oscillator_frequency():
    mat = preset("paper-default")
    derive_scales(mat)  # warm
    start = time.perf_counter()
    omega = derive_scales(mat).omega_G_nucl
    elapsed = time.perf_counter() - start
    ok = 1e2 <= omega <= 1e4 and elapsed < 1e-3
    report(1, ok, f"omega_G = {omega:.6g} rad/s in [1e2, 1e4], {elapsed * 1e6:.0f} us")


def test_criterion_02_standard_heating_magnitude():
    mat = preset("paper-default")
    standard_budget(mat, M=1.0)  # warm
    start = time.perf_counter()
    total = standard_budget(mat, M=1.0).total_standard_rate
    elapsed = time.perf_counter() - start
    c = constants()
    independent = 0.25 * c.G * c.hbar / (math.sqrt(math.pi) * SIGMA**3)
    gap = rel(total, independent)
    ok = 1.0 <= total <= 1000.0 and gap < 1e-12 and elapsed < 1e-3
    report(
        2,
        ok,
        f"total = {total:.6g} erg/s in [1, 1000], independent-arithmetic gap "
        f"{gap:.2e} < 1e-12, {elapsed * 1e6:.0f} us",
    )


def test_criterion_03_per_dof_heating_rate():
    value = heating_per_dof_at(1e3)
    independent = constants().hbar * 1e3**2 / 2.0
    gap = rel(value, independent)
    anchor = rel(value, 5.272859085e-22)
    ok = gap < 1e-10 and anchor < 1e-10 and 1e-22 <= value <= 1e-20
    report(
        3,
        ok,
        f"hbar*omega^2/2 at 1e3 rad/s = {value:.10g} erg/s (gap {gap:.2e}, "
        f"anchor gap {anchor:.2e}) in [1e-22, 1e-20]",
    )


def test_criterion_04_dominance_wavelength_and_census():
    mat = preset("paper-default")
    scales = derive_scales(mat)
    lam = scales.lambda_dominance
    in_band = 30.0 <= lam <= 3000.0

    # 100 m box: every enumerated mode with 1/k above ten dominance lengths
    # must be decoherence-dominated.  The largest available 1/k is L/(2 pi),
    # which sits below the threshold here, so the subset is empty and the
    # claim holds vacuously; a 1 km box exercises it non-vacuously.
    box = BoxSpec((1e4, 1e4, 1e4))
    modes = enumerate_modes(box, mat, 12.0 * 2.0 * math.pi / 1e4)
    threshold = 10.0 * mat.c_l / scales.omega_G_nucl
    selected = [m for m in modes if 1.0 / m.k_mag > threshold]
    all_dd = all(m.classification is ModeClass.DECOHERENCE_DOMINATED for m in selected)

    wide = BoxSpec((1e5, 1e5, 1e5))
    wide_modes = enumerate_modes(wide, mat, 4e-4)
    wide_selected = [m for m in wide_modes if 1.0 / m.k_mag > threshold]
    wide_dd = all(
        m.classification is ModeClass.DECOHERENCE_DOMINATED for m in wide_selected
    )
    ok = in_band and all_dd and len(wide_selected) > 0 and wide_dd
    report(
        4,
        ok,
        f"lambda = {lam:.6g} cm in [30, 3000]; 100 m box: {len(selected)} modes above "
        f"10*lambda (vacuously decoherence-dominated), 1 km box: {len(wide_selected)} "
        f"modes, all decoherence-dominated = {wide_dd}",
    )


def test_criterion_05_cutoff_budget():
    mat = preset("paper-default")
    cutoff_budget(mat, 1.0, 1.0, 1e-5)  # warm
    start = time.perf_counter()
    budget = cutoff_budget(mat, M=1.0, volume=1.0, cutoff_lambda=1e-5, n_components=3)
    elapsed = time.perf_counter() - start
    identity = budget.total_cutoff_rate == budget.modes_heated * budget.per_mode_rate
    ok = (
        1e-9 <= budget.total_cutoff_rate <= 1e-5
        and 1e-11 <= budget.modes_to_nuclei_ratio <= 1e-7
        and identity
        and elapsed < 1.0
    )
    report(
        5,
        ok,
        f"total = {budget.total_cutoff_rate:.6g} erg/s in [1e-9, 1e-5], ratio = "
        f"{budget.modes_to_nuclei_ratio:.6g} in [1e-11, 1e-7], bitwise identity "
        f"{identity}, {elapsed * 1e3:.1f} ms",
    )


def test_criterion_06_sigma_scaling_of_heating():
    def rate(sigma):
        mat = Material(mass_density=1.0, m_av=2e-23, m_sq_av=4e-46, sigma=sigma, c_l=1e5)
        return standard_budget(mat, M=1.0).total_standard_rate

    ratio = rate(SIGMA) / rate(100.0 * SIGMA)
    gap = rel(ratio, 1e6)
    ok = gap < 1e-12
    report(6, ok, f"rate(sigma)/rate(100 sigma) = {ratio:.12g}, gap {gap:.2e} < 1e-12")


def test_criterion_07_energy_growth_linear():
    rng = np.random.default_rng(7)
    start = time.perf_counter()
    worst_slope = 0.0
    worst_r2 = 1.0
    for _ in range(10):
        mu = 10.0 ** rng.uniform(-1.0, 1.0)
        omega_k = 10.0 ** rng.uniform(2.0, 4.0)
        omega_G = omega_k * 10.0 ** rng.uniform(-1.0, 0.5)
        n_components = int(rng.choice([1, 3]))
        params = ModeDynamicsParams(mu, omega_k, omega_G, n_components)
        nbar = rng.uniform(0.2, 2.0)
        u_scale = math.sqrt(HBAR / (mu * omega_k))
        p_scale = math.sqrt(HBAR * mu * omega_k)
        state = GaussianState(
            mean_u=rng.normal(scale=1.5) * u_scale,
            mean_pi=rng.normal(scale=1.5) * p_scale,
            cov_uu=(1.0 + nbar) * 0.5 * u_scale**2,
            cov_upi=0.0,
            cov_pipi=(1.0 + nbar) * 0.5 * p_scale**2,
        )
        times = np.linspace(0.0, 20.0 / omega_k, 50)
        energies = np.array(
            [mode_energy(evolve_mode(state, params, float(t)), params) for t in times]
        )
        slope, intercept = np.polyfit(times, energies, 1)
        expected = n_components * HBAR * omega_G**2 / 2.0
        worst_slope = max(worst_slope, rel(slope, expected))
        fitted = slope * times + intercept
        ss_res = float(np.sum((energies - fitted) ** 2))
        ss_tot = float(np.sum((energies - energies.mean()) ** 2))
        worst_r2 = min(worst_r2, 1.0 - ss_res / ss_tot)
    elapsed = time.perf_counter() - start
    ok = worst_slope < 1e-8 and worst_r2 > 1.0 - 1e-10 and elapsed < 1.0
    report(
        7,
        ok,
        f"10 parameter sets x 50 times: max slope error {worst_slope:.2e} < 1e-8, "
        f"min R^2 = 1 - {1.0 - worst_r2:.2e}, {elapsed * 1e3:.0f} ms total",
    )


def _ladder(n_max):
    return np.diag(np.sqrt(np.arange(1.0, n_max)), 1)


def _prepared_states(n_max):
    """Three Gaussian initial states: coherent, squeezed-displaced, thermal."""
    a = _ladder(n_max)
    adag = a.T.conj()

    params_a = ModeDynamicsParams(1.0, 1e3, 300.0, n_components=1)
    coherent = coherent_fock_state(n_max, params_a, 0.7 + 0.2j)

    params_b = ModeDynamicsParams(1.0, 2e3, 600.0, n_components=1)
    alpha, r = 0.5, 0.4
    displace = scipy.linalg.expm(alpha * adag - np.conj(alpha) * a)
    squeeze = scipy.linalg.expm(0.5 * r * (a @ a - adag @ adag))
    psi = displace @ squeeze @ np.eye(n_max, 1, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    squeezed = FockState(n_max, np.outer(psi, psi.conj()), params_b)

    # occupancy kept moderate: the thermal tail heats over the period and its
    # weight past the basis edge is what limits the moment agreement at
    # n_max = 30, well before the truncation guard trips.
    params_c = ModeDynamicsParams(1.0, 5e2, 150.0, n_components=1)
    nbar = 0.5
    x = nbar / (1.0 + nbar)
    weights = (1.0 - x) * x ** np.arange(n_max)
    rho_th = np.diag(weights / weights.sum()).astype(complex)
    alpha_c = 0.3 + 0.2j
    displace_c = scipy.linalg.expm(alpha_c * adag - np.conj(alpha_c) * a)
    rho_c = displace_c @ rho_th @ displace_c.conj().T
    rho_c = (rho_c + rho_c.conj().T) / 2.0
    rho_c = rho_c / np.trace(rho_c).real
    thermal = FockState(n_max, rho_c, params_c)

    return [coherent, squeezed, thermal]


def test_criterion_08_oracle_matches_gaussian_moments():
    n_max = 30
    start = time.perf_counter()
    worst_moment = 0.0
    worst_slope = 0.0
    for state in _prepared_states(n_max):
        params = state.params
        validate_fock_state(state)
        period = 2.0 * math.pi / params.omega_k
        dt = period / 6000.0
        u_scale = math.sqrt(HBAR / (params.mode_mass * params.omega_k))
        pi_scale = math.sqrt(HBAR * params.mode_mass * params.omega_k)
        to_natural = np.array(
            [u_scale, pi_scale, u_scale**2, u_scale * pi_scale, pi_scale**2]
        )
        gauss0 = GaussianState(*[float(v) for v in fock_moments(state)])
        times = np.linspace(period / 12.0, period, 12)
        energies = []
        current = state
        previous_t = 0.0
        for t in times:
            current = evolve_fock(current, float(t) - previous_t, dt)
            previous_t = float(t)
            fock_nat = fock_moments_natural(current)
            gauss_nat = evolve_mode(gauss0, params, float(t)).moments() / to_natural
            worst_moment = max(worst_moment, float(np.max(np.abs(fock_nat - gauss_nat))))
            energies.append(fock_energy(current))
        validate_fock_state(current)
        slope = float(np.polyfit(times, energies, 1)[0])
        worst_slope = max(worst_slope, rel(slope, HBAR * params.omega_G**2 / 2.0))
    elapsed = time.perf_counter() - start
    ok = worst_moment < 1e-6 and worst_slope < 1e-4 and elapsed < 30.0
    report(
        8,
        ok,
        f"3 states, n_max = {n_max}, one period each: max natural-moment gap "
        f"{worst_moment:.2e} < 1e-6, max heating-slope error {worst_slope:.2e} < 1e-4, "
        f"{elapsed:.1f} s",
    )


def _fitted_coherence_rate(d_natural, n_max, times_natural, dt_natural):
    params = ModeDynamicsParams(1.0, 1e3, 1e3, n_components=1)
    u_scale = math.sqrt(HBAR / (params.mode_mass * params.omega_k))
    d = d_natural * u_scale
    times = times_natural / params.omega_k
    values = coherence_decay_fock(params, d, times, n_max, dt_natural / params.omega_k)
    fitted = float(np.polyfit(times, -np.log(values), 1)[0])
    formula = com_superposition_decay_rate(params.mode_mass, params.omega_G, d)
    return fitted, formula


def test_criterion_09_coherence_decay_rate():
    start = time.perf_counter()
    d1 = math.sqrt(200.0)
    fitted1, formula1 = _fitted_coherence_rate(
        d1, n_max=60, times_natural=np.linspace(5e-5, 7e-4, 27), dt_natural=1e-5
    )
    gap1 = rel(fitted1, formula1)

    fitted2, _ = _fitted_coherence_rate(
        2.0 * d1, n_max=160, times_natural=np.linspace(6.25e-6, 1.75e-4, 27), dt_natural=1e-5
    )
    quadrupling = fitted2 / fitted1
    gap2 = rel(quadrupling, 4.0)
    elapsed = time.perf_counter() - start
    ok = gap1 < 1e-2 and gap2 < 2e-2 and elapsed < 60.0
    report(
        9,
        ok,
        f"fitted/formula - 1 = {fitted1 / formula1 - 1.0:+.4f} (|.| < 0.01); doubling d "
        f"scales the rate by {quadrupling:.4f} (within 2% of 4), {elapsed:.1f} s",
    )


def test_criterion_10_catness_frequency_link():
    m = 2e-23
    d = 0.01 * SIGMA
    mat = Material(mass_density=1.0, m_av=m, m_sq_av=m * m, sigma=SIGMA, c_l=1e5)
    omega = derive_scales(mat, which_f_nucl=FNucl.ACOUSTIC).omega_G_nucl
    catness(single_mass(m), single_mass(m, z=d))  # warm
    start = time.perf_counter()
    result = catness(single_mass(m), single_mass(m, z=d))
    gamma = com_superposition_decay_rate(m, omega, d)
    elapsed = time.perf_counter() - start
    freq_gap = rel(result.ell_g_sq / (m * d * d), omega**2)
    product = gamma * result.tau_g
    product_gap = rel(product, 0.5)
    ok = freq_gap < 1e-2 and product_gap < 1e-2 and elapsed < 1e-3
    report(
        10,
        ok,
        f"ell^2/(m d^2) vs omega_G^2 off by {freq_gap:.2e} (< 1e-2); "
        f"Gamma*tau_G = {product:.6f} within 1% of 1/2; {elapsed * 1e6:.0f} us",
    )


def test_criterion_11_quadrature_oracle_agreement():
    grid = QuadratureGrid(spacing=SIGMA / 6.0)
    start = time.perf_counter()
    worst = 0.0
    cases = {"coincident": 0.0, "near": 4.0 * SIGMA, "far": 20.0 * SIGMA}
    for label, d in cases.items():
        f1 = single_mass(1.0)
        f2 = single_mass(1.0, z=d)
        closed = catness(f1, f2)
        quad = catness_quadrature_oracle(f1, f2, grid)
        gaps = [
            rel(quad.u11, closed.u11),
            rel(quad.u22, closed.u22),
            rel(quad.u12, closed.u12),
        ]
        if d > 0.0:
            gaps.append(rel(quad.ell_g_sq, closed.ell_g_sq))
        worst = max(worst, max(gaps))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-4 and elapsed < 60.0
    report(
        11,
        ok,
        f"coincident / 4 sigma / 20 sigma at sigma/6 spacing: max relative gap "
        f"{worst:.2e} < 1e-4, {elapsed:.1f} s",
    )


def test_criterion_12_invariant_suites():
    rng = np.random.default_rng(12)

    # catness non-negativity over 1000 random pairs
    worst_floor = math.inf
    for _ in range(1000):
        configs = []
        for _ in range(2):
            n = int(rng.integers(1, 6))
            configs.append(
                MassConfiguration(
                    rng.normal(scale=3.0 * SIGMA, size=(n, 3)),
                    np.exp(rng.normal(math.log(2e-23), 0.5, size=n)),
                    SIGMA,
                )
            )
        result = catness(configs[0], configs[1])
        floor = result.ell_g_sq + 1e-12 * (abs(result.u11) + abs(result.u22))
        worst_floor = min(worst_floor, floor)
    nonneg_ok = worst_floor >= 0.0

    # uncertainty-bound preservation over 100 random evolutions
    rs_ok = True
    for _ in range(100):
        mu = 10.0 ** rng.uniform(-1.0, 1.0)
        omega_k = 10.0 ** rng.uniform(2.0, 4.0)
        params = ModeDynamicsParams(mu, omega_k, omega_k * rng.uniform(0.1, 2.0), 1)
        nbar = rng.uniform(0.1, 2.0)
        state = GaussianState(
            0.0,
            0.0,
            (1.0 + nbar) * HBAR / (2.0 * mu * omega_k),
            0.0,
            (1.0 + nbar) * HBAR * mu * omega_k / 2.0,
        )
        evolved = evolve_mode(state, params, rng.uniform(0.0, 20.0) / omega_k)
        det = evolved.cov_uu * evolved.cov_pipi - evolved.cov_upi**2
        rs_ok = rs_ok and det >= 0.25 * HBAR**2 * (1.0 - 1e-9)

    # density-matrix health on fresh oracle runs
    fock_ok = True
    for omega_G in (300.0, 700.0):
        params = ModeDynamicsParams(1.0, 1e3, omega_G, n_components=1)
        state = coherent_fock_state(24, params, 0.5 + 0.3j)
        period = 2.0 * math.pi / params.omega_k
        evolved = evolve_fock(state, period / 2.0, period / 3000.0)
        try:
            validate_fock_state(evolved)
        except ValidationError:
            fock_ok = False
        eigenvalues = np.linalg.eigvalsh(evolved.rho)
        fock_ok = fock_ok and float(eigenvalues.min()) >= -1e-10

    # continuum census against the exact lattice count at 1e3..1e4 modes
    census_ok = True
    worst_census = 0.0
    for edge in (40.0, 62.0, 82.0):
        box = BoxSpec((edge, edge, edge))
        exact = count_modes_lattice(box, 1.0)
        continuum = box.volume / (6.0 * math.pi**2)
        gap = abs(exact - continuum) / exact
        census_ok = census_ok and 1e3 < exact < 1e4 and gap < 0.15
        worst_census = max(worst_census, gap)

    ok = nonneg_ok and rs_ok and fock_ok and census_ok
    report(
        12,
        ok,
        f"catness floor ok = {nonneg_ok} (1000 pairs); uncertainty bound ok = {rs_ok} "
        f"(100 evolutions); oracle density matrices ok = {fock_ok}; census vs lattice "
        f"max gap {worst_census:.1%} < 15%",
    )

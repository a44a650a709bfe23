"""Brute-force dense oracle for a single decohering mode in a number basis.

The mode master equation

    d rho / dt = -(i/hbar) [H, rho] - (mu omega_G^2 / (2 hbar)) [u, [u, rho]]

is integrated as a dense density matrix in a truncated oscillator basis of
dimension n_max.  This path makes no Gaussian assumption, which is the whole
point: gaussian_dynamics is validated against it, in particular the
momentum-diffusion coefficient and the off-diagonal decay of displaced-state
superpositions.

Internally everything is scaled to natural units (hbar = mu = omega_k = 1),
leaving the single dimensionless coupling g = (omega_G / omega_k)^2; CGS
magnitudes like hbar ~ 1e-27 would otherwise ruin the conditioning of the
dense linear algebra.  Conversions happen only at the boundary and are
tested explicitly.  The double commutator heats without bound, so every
sufficiently long run must eventually leak out of the truncated basis; the
integrator watches the top two levels and aborts loudly rather than decay
silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constants import constants
from .errors import TruncationLeakageError, ValidationError
from .gaussian_dynamics import ModeDynamicsParams

__all__ = [
    "FockState",
    "build_operators",
    "fock_ground",
    "coherent_fock_state",
    "cat_fock_state",
    "evolve_fock",
    "fock_moments",
    "fock_moments_natural",
    "fock_energy",
    "excess_kurtosis_u",
    "validate_fock_state",
    "coherence_decay_fock",
]

# Population allowed in the top two truncation levels before aborting.
_LEAKAGE_LIMIT = 1e-6

_TRACE_TOL = 1e-10
_HERMITIAN_TOL = 1e-12
_EIGENVALUE_TOL = 1e-10


def _require_oracle_params(params: ModeDynamicsParams) -> None:
    if params.n_components != 1:
        raise ValidationError("the dense oracle treats a single quadrature; n_components must be 1")
    if params.omega_k <= 0.0:
        raise ValidationError("the dense oracle needs omega_k > 0 to fix its natural units")


@lru_cache(maxsize=16)
def _natural_operators(n_max: int):
    """Dimensionless (a, u, pi, H) on the truncated basis, read-only."""
    if n_max < 4:
        raise ValidationError(f"n_max must be >= 4, got {n_max}")
    n = np.arange(n_max)
    a = np.diag(np.sqrt(n[1:].astype(float)), 1)
    u = (a + a.T) / math.sqrt(2.0)
    pi = 1j * (a.T - a) / math.sqrt(2.0)
    H = (pi @ pi + u @ u).real / 2.0
    for arr in (a, u, pi, H):
        arr.setflags(write=False)
    return a, u, pi, H


def _scales(params: ModeDynamicsParams) -> tuple[float, float]:
    """(u, pi) conversion factors from natural to physical units."""
    hbar = constants().hbar
    u_scale = math.sqrt(hbar / (params.mode_mass * params.omega_k))
    pi_scale = math.sqrt(hbar * params.mode_mass * params.omega_k)
    return u_scale, pi_scale


@dataclass(eq=False)
class FockState:
    """Truncated number-basis density matrix with its mode parameters."""

    n_max: int
    rho: np.ndarray
    params: ModeDynamicsParams

    def __post_init__(self) -> None:
        _require_oracle_params(self.params)
        rho = np.asarray(self.rho, dtype=complex)
        if rho.shape != (self.n_max, self.n_max):
            raise ValidationError(f"rho must be {self.n_max}x{self.n_max}, got {rho.shape}")
        self.rho = rho


def validate_fock_state(state: FockState) -> None:
    """Check trace, Hermiticity and positivity; raises ValidationError."""
    rho = state.rho
    trace = np.trace(rho)
    if abs(trace - 1.0) > _TRACE_TOL:
        raise ValidationError(f"trace(rho) = {trace} deviates from 1 beyond {_TRACE_TOL}")
    asym = np.max(np.abs(rho - rho.conj().T))
    if asym > _HERMITIAN_TOL:
        raise ValidationError(f"rho deviates from Hermitian by {asym} elementwise")
    eigenvalues = np.linalg.eigvalsh(rho)
    if eigenvalues.min() < -_EIGENVALUE_TOL:
        raise ValidationError(f"rho has eigenvalue {eigenvalues.min()} below -{_EIGENVALUE_TOL}")


def build_operators(n_max: int, params: ModeDynamicsParams):
    """Physical-unit (u_op, pi_op, H_op) matrices on the truncated basis.

    u = sqrt(hbar/(2 mu omega_k)) (a + a+), pi = i sqrt(hbar mu omega_k / 2)
    (a+ - a), H = pi^2/(2 mu) + mu omega_k^2 u^2 / 2.  Truncation corrupts
    the top two levels (the product a a+ loses its last diagonal entry), so
    algebraic identities hold on the inner block only.
    """
    _require_oracle_params(params)
    _, u_nat, pi_nat, H_nat = _natural_operators(n_max)
    u_scale, pi_scale = _scales(params)
    hbar = constants().hbar
    u_op = u_scale * u_nat
    pi_op = pi_scale * pi_nat
    H_op = hbar * params.omega_k * H_nat.astype(complex)
    return u_op, pi_op, H_op


def _coherent_vector(n_max: int, alpha: complex) -> np.ndarray:
    """Number-basis coefficients of |alpha>, built iteratively for stability."""
    coeff = np.zeros(n_max, dtype=complex)
    coeff[0] = math.exp(-abs(alpha) ** 2 / 2.0)
    for k in range(1, n_max):
        coeff[k] = coeff[k - 1] * alpha / math.sqrt(k)
    return coeff


def fock_ground(n_max: int, params: ModeDynamicsParams) -> FockState:
    """Oscillator ground state."""
    _natural_operators(n_max)
    rho = np.zeros((n_max, n_max), dtype=complex)
    rho[0, 0] = 1.0
    return FockState(n_max=n_max, rho=rho, params=params)


def coherent_fock_state(n_max: int, params: ModeDynamicsParams, alpha: complex) -> FockState:
    """Coherent state |alpha> as a density matrix (alpha in natural units)."""
    _natural_operators(n_max)
    coeff = _coherent_vector(n_max, alpha)
    coeff = coeff / np.linalg.norm(coeff)
    return FockState(n_max=n_max, rho=np.outer(coeff, coeff.conj()), params=params)


def _displacement_alpha(params: ModeDynamicsParams, d: float) -> float:
    """Natural-unit coherent amplitude whose mean displacement is d/2."""
    u_scale, _ = _scales(params)
    d_nat = d / u_scale
    return d_nat / (2.0 * math.sqrt(2.0))


def cat_fock_state(n_max: int, params: ModeDynamicsParams, d: float) -> FockState:
    """Even superposition of ground states displaced to +-d/2 (d physical)."""
    if not d >= 0.0:
        raise ValidationError(f"d must be non-negative, got {d!r}")
    alpha = _displacement_alpha(params, d)
    plus = _coherent_vector(n_max, alpha)
    minus = _coherent_vector(n_max, -alpha)
    psi = plus + minus
    psi = psi / np.linalg.norm(psi)
    return FockState(n_max=n_max, rho=np.outer(psi, psi.conj()), params=params)


def _rhs(rho: np.ndarray, H: np.ndarray, u: np.ndarray, g: float) -> np.ndarray:
    commutator = H @ rho - rho @ H
    bracket = u @ rho - rho @ u
    double = u @ bracket - bracket @ u
    return -1j * commutator - (g / 2.0) * double


def _check_leakage(rho: np.ndarray) -> None:
    top = rho[-1, -1].real + rho[-2, -2].real
    if top > _LEAKAGE_LIMIT:
        raise TruncationLeakageError(
            f"top-two-level population {top:.3e} exceeds {_LEAKAGE_LIMIT}; "
            "increase n_max or shorten the run"
        )


def _max_step(state: FockState) -> float:
    """Largest admissible step: both the oscillation and the decoherence
    timescales must be resolved, dt <= 0.01 min(1/omega_k, hbar/(mu omega_G^2 <u^2>))."""
    params = state.params
    bound = 0.01 / params.omega_k
    if params.omega_G > 0.0:
        _, u_nat, _, _ = _natural_operators(state.n_max)
        u_sq_nat = float(np.trace(state.rho @ (u_nat @ u_nat)).real)
        u_scale, _ = _scales(params)
        u_sq = u_sq_nat * u_scale**2
        hbar = constants().hbar
        bound = min(bound, 0.01 * hbar / (params.mode_mass * params.omega_G**2 * u_sq))
    return bound


def evolve_fock(state: FockState, t: float, dt: float) -> FockState:
    """Fixed-step 4th-order integration over time t with target step dt.

    The actual step is t/n with n = ceil(t/dt), so the endpoint is exact and
    the step never exceeds dt.  dt must satisfy the resolution bound of
    _max_step; leakage into the top two levels aborts the run.
    """
    if not (math.isfinite(t) and t >= 0.0):
        raise ValidationError(f"t must be finite and non-negative, got {t!r}")
    if t == 0.0:
        return FockState(n_max=state.n_max, rho=state.rho.copy(), params=state.params)
    if not (math.isfinite(dt) and dt > 0.0):
        raise ValidationError(f"dt must be finite and positive, got {dt!r}")
    bound = _max_step(state)
    if dt > bound:
        raise ValidationError(
            f"dt = {dt!r} does not resolve the dynamics; need dt <= {bound!r} for this state"
        )
    params = state.params
    _, u_nat, _, H_nat = _natural_operators(state.n_max)
    g = (params.omega_G / params.omega_k) ** 2
    tau = params.omega_k * t
    n_steps = max(1, int(math.ceil(t / dt)))
    h = tau / n_steps
    rho = state.rho.copy()
    H = H_nat.astype(complex)
    for _ in range(n_steps):
        k1 = _rhs(rho, H, u_nat, g)
        k2 = _rhs(rho + 0.5 * h * k1, H, u_nat, g)
        k3 = _rhs(rho + 0.5 * h * k2, H, u_nat, g)
        k4 = _rhs(rho + h * k3, H, u_nat, g)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        _check_leakage(rho)
    return FockState(n_max=state.n_max, rho=rho, params=params)


def fock_moments_natural(state: FockState) -> np.ndarray:
    """(mean_u, mean_pi, cov_uu, cov_upi, cov_pipi) in natural units."""
    _, u, pi, _ = _natural_operators(state.n_max)
    rho = state.rho
    mean_u = float(np.trace(rho @ u).real)
    mean_pi = float(np.trace(rho @ pi).real)
    cov_uu = float(np.trace(rho @ (u @ u)).real) - mean_u**2
    cov_pipi = float(np.trace(rho @ (pi @ pi)).real) - mean_pi**2
    sym = (u @ pi + pi @ u) / 2.0
    cov_upi = float(np.trace(rho @ sym).real) - mean_u * mean_pi
    return np.array([mean_u, mean_pi, cov_uu, cov_upi, cov_pipi])


def fock_moments(state: FockState) -> np.ndarray:
    """The five moments in physical (CGS mode-normalization) units."""
    u_scale, pi_scale = _scales(state.params)
    natural = fock_moments_natural(state)
    factors = np.array([u_scale, pi_scale, u_scale**2, u_scale * pi_scale, pi_scale**2])
    return natural * factors


def fock_energy(state: FockState) -> float:
    """Mean energy tr(rho H) in erg."""
    _, _, _, H_nat = _natural_operators(state.n_max)
    natural = float(np.trace(state.rho @ H_nat).real)
    return constants().hbar * state.params.omega_k * natural


def excess_kurtosis_u(state: FockState) -> float:
    """Excess kurtosis of the displacement distribution; zero for Gaussians."""
    _, u, _, _ = _natural_operators(state.n_max)
    rho = state.rho
    mean_u = float(np.trace(rho @ u).real)
    centered = u - mean_u * np.eye(state.n_max)
    c2 = centered @ centered
    var = float(np.trace(rho @ c2).real)
    fourth = float(np.trace(rho @ (c2 @ c2)).real)
    return fourth / var**2 - 3.0


def coherence_decay_fock(
    params: ModeDynamicsParams,
    d: float,
    times,
    n_max: int,
    dt: float | None = None,
) -> np.ndarray:
    """Normalized off-diagonal magnitude |<-d/2| rho(t) |+d/2>| / value(0).

    The state starts as the even superposition of the two displaced ground
    states.  For omega_k t << 1 the magnitude decays as
    exp(-(mu omega_G^2 / (2 hbar)) d^2 t) up to the finite packet width.
    times must be ascending and non-negative; d = 0 stays at 1 identically.
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if times.size == 0 or np.any(times < 0.0) or np.any(np.diff(times) < 0.0):
        raise ValidationError("times must be a non-empty ascending array of non-negative values")
    state = cat_fock_state(n_max, params, d)
    alpha = _displacement_alpha(params, d)
    plus = _coherent_vector(n_max, alpha)
    minus = _coherent_vector(n_max, -alpha)

    def off_diagonal(rho: np.ndarray) -> float:
        return abs(minus.conj() @ rho @ plus)

    reference = off_diagonal(state.rho)
    if dt is None:
        dt = 0.25 * _max_step(state)
    values = np.empty(times.size)
    current = state
    previous_t = 0.0
    for i, t in enumerate(times):
        current = evolve_fock(current, t - previous_t, dt)
        values[i] = off_diagonal(current.rho) / reference
        previous_t = t
    return values

"""Exact Gaussian-moment evolution of decohering acoustic modes and the c.o.m.

Each acoustic mode is one canonical pair (u, pi) with [u, pi] = i hbar, mode
mass mu equal to the bulk density f_a (the volume factor sits inside the mode
normalization), stiffness mu omega_k^2, and a gravitational double-commutator
term that diffuses the momentum at the rate set by the Newton-oscillator
frequency omega_G.  The master equation is quadratic plus double commutator,
so Gaussian states stay Gaussian and the first and second moments close:

    d<u>/dt  = <pi>/mu                 d<pi>/dt = -mu omega_k^2 <u>
    d cov_uu/dt  = 2 cov_upi / mu
    d cov_upi/dt = cov_pipi / mu - mu omega_k^2 cov_uu
    d cov_pipi/dt = -2 mu omega_k^2 cov_upi + hbar mu omega_G^2

The momentum-diffusion coefficient hbar mu omega_G^2 is re-derived
independently by the dense number-basis oracle in fock_oracle; the energy
consequence is a strictly linear heating of hbar omega_G^2 / 2 per
quadrature.  Means never feel omega_G: the double commutator is pure
diffusion.

Two integration paths are provided.  The analytic closed form (rotation of
the harmonic flow plus exactly integrated diffusion) is authoritative; a
fixed-step 4th-order integrator with step-halving control serves as an
internal cross-check.  The center of mass is the k = 0 mode: a free particle
of mass M whose momentum diffuses at hbar M omega_G^2, solved in closed form
as polynomials in t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .constants import constants
from .errors import ValidationError

__all__ = [
    "GaussianState",
    "ModeDynamicsParams",
    "ComState",
    "ground_state",
    "evolve_mode",
    "evolve_mode_rk4",
    "mode_energy",
    "evolve_com_axis",
    "evolve_com",
    "com_kinetic_energy",
    "minimum_uncertainty_com",
    "com_superposition_decay_rate",
    "check_small_displacement_validity",
]

# Robertson-Schrodinger det >= hbar^2/4 is enforced with this relative slack.
_RS_TOLERANCE = 1e-9

# Step-halving control target for the cross-check integrator.
_RK4_CONTROL = 1e-10


@dataclass(frozen=True)
class GaussianState:
    """First and second moments of one canonical pair.

    mean_u is the displacement coordinate, mean_pi its conjugate momentum in
    the mode normalization (units fixed by [u, pi] = i hbar); cov_upi is the
    symmetrized cross covariance.
    """

    mean_u: float
    mean_pi: float
    cov_uu: float
    cov_upi: float
    cov_pipi: float

    def __post_init__(self) -> None:
        for name in ("mean_u", "mean_pi", "cov_uu", "cov_upi", "cov_pipi"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ValidationError(f"GaussianState.{name} must be finite, got {value!r}")
        if not (self.cov_uu > 0.0 and self.cov_pipi > 0.0):
            raise ValidationError("cov_uu and cov_pipi must be strictly positive")
        hbar = constants().hbar
        det = self.cov_uu * self.cov_pipi - self.cov_upi**2
        if det < 0.25 * hbar**2 * (1.0 - _RS_TOLERANCE):
            raise ValidationError(
                f"covariances violate the uncertainty bound: det = {det!r} < hbar^2/4"
            )

    def moments(self) -> np.ndarray:
        return np.array([self.mean_u, self.mean_pi, self.cov_uu, self.cov_upi, self.cov_pipi])


@dataclass(frozen=True)
class ModeDynamicsParams:
    """Mode mass mu (g/cm^3 in the bulk normalization), frequencies in rad/s.

    omega_k = 0 describes the free (k -> 0) limit and omega_G = 0 switches
    the decoherence off; both are legal.  n_components scales scalar results
    to isotropic vector displacements (3) or a single quadrature (1).
    """

    mode_mass: float
    omega_k: float
    omega_G: float
    n_components: int = 3

    def __post_init__(self) -> None:
        if not (isinstance(self.mode_mass, (int, float)) and math.isfinite(self.mode_mass) and self.mode_mass > 0):
            raise ValidationError(f"mode_mass must be finite and positive, got {self.mode_mass!r}")
        for name in ("omega_k", "omega_G"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
                raise ValidationError(f"{name} must be finite and non-negative, got {value!r}")
        if self.n_components not in (1, 3):
            raise ValidationError(f"n_components must be 1 or 3, got {self.n_components!r}")


def ground_state(params: ModeDynamicsParams) -> GaussianState:
    """Oscillator ground state of the omega_k mode; requires omega_k > 0."""
    if params.omega_k <= 0.0:
        raise ValidationError("ground_state needs omega_k > 0")
    hbar = constants().hbar
    return GaussianState(
        mean_u=0.0,
        mean_pi=0.0,
        cov_uu=hbar / (2.0 * params.mode_mass * params.omega_k),
        cov_upi=0.0,
        cov_pipi=hbar * params.mode_mass * params.omega_k / 2.0,
    )


def _check_time(t: float) -> None:
    if not (isinstance(t, (int, float)) and math.isfinite(t) and t >= 0.0):
        raise ValidationError(f"evolution time must be finite and non-negative, got {t!r}")


def evolve_mode(state: GaussianState, params: ModeDynamicsParams, t: float) -> GaussianState:
    """Closed-form solution of the moment equations at time t.

    For omega_k > 0 the harmonic flow is the phase-space rotation
    Phi = [[cos, sin/(mu w)], [-mu w sin, cos]] and the accumulated diffusion
    is the integral of Phi D Phi^T with D = diag(0, hbar mu omega_G^2):

        d cov_uu   = q (t/2 - sin(2wt)/(4w)) / (mu w)^2
        d cov_upi  = q sin(wt)^2 / (2 w mu w)
        d cov_pipi = q (t/2 + sin(2wt)/(4w)),      q = hbar mu omega_G^2.

    For omega_k = 0 the flow is free and the same integral gives the
    polynomial growth written out in the code.
    """
    _check_time(t)
    if t == 0.0:
        return state
    mu = params.mode_mass
    q = constants().hbar * mu * params.omega_G**2
    u0, p0 = state.mean_u, state.mean_pi
    uu0, up0, pp0 = state.cov_uu, state.cov_upi, state.cov_pipi

    if params.omega_k == 0.0:
        return GaussianState(
            mean_u=u0 + p0 * t / mu,
            mean_pi=p0,
            cov_uu=uu0 + 2.0 * up0 * t / mu + pp0 * t**2 / mu**2 + q * t**3 / (3.0 * mu**2),
            cov_upi=up0 + pp0 * t / mu + q * t**2 / (2.0 * mu),
            cov_pipi=pp0 + q * t,
        )

    w = params.omega_k
    theta = w * t
    c, s = math.cos(theta), math.sin(theta)
    mw = mu * w
    sin2 = math.sin(2.0 * theta)
    mean_u = u0 * c + p0 * s / mw
    mean_pi = p0 * c - mw * u0 * s
    # Rotate the covariance matrix through Phi Sigma Phi^T.
    uu_rot = c * c * uu0 + 2.0 * c * s / mw * up0 + (s / mw) ** 2 * pp0
    up_rot = -mw * s * c * uu0 + (c * c - s * s) * up0 + s * c / mw * pp0
    pp_rot = (mw * s) ** 2 * uu0 - 2.0 * mw * s * c * up0 + c * c * pp0
    half_t = 0.5 * t
    osc = sin2 / (4.0 * w)
    return GaussianState(
        mean_u=mean_u,
        mean_pi=mean_pi,
        cov_uu=uu_rot + q * (half_t - osc) / mw**2,
        cov_upi=up_rot + q * s * s / (2.0 * w * mw),
        cov_pipi=pp_rot + q * (half_t + osc),
    )


def _moment_rhs(y: np.ndarray, mu: float, omega_k: float, q: float) -> np.ndarray:
    stiffness = mu * omega_k**2
    return np.array(
        [
            y[1] / mu,
            -stiffness * y[0],
            2.0 * y[3] / mu,
            y[4] / mu - stiffness * y[2],
            -2.0 * stiffness * y[3] + q,
        ]
    )


def _rk4_run(y0: np.ndarray, mu: float, omega_k: float, q: float, t: float, n_steps: int) -> np.ndarray:
    dt = t / n_steps
    y = y0.copy()
    for _ in range(n_steps):
        k1 = _moment_rhs(y, mu, omega_k, q)
        k2 = _moment_rhs(y + 0.5 * dt * k1, mu, omega_k, q)
        k3 = _moment_rhs(y + 0.5 * dt * k2, mu, omega_k, q)
        k4 = _moment_rhs(y + dt * k3, mu, omega_k, q)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return y


def _moment_scales(state: GaussianState, params: ModeDynamicsParams, t: float) -> np.ndarray:
    """Reference magnitudes for relative comparisons of the five moments."""
    hbar = constants().hbar
    omega_ref = max(params.omega_k, params.omega_G, 1.0 / t if t > 0 else 1.0)
    u_ref = math.sqrt(hbar / (2.0 * params.mode_mass * omega_ref) + state.cov_uu)
    p_ref = math.sqrt(hbar * params.mode_mass * omega_ref / 2.0 + state.cov_pipi)
    return np.array([u_ref, p_ref, u_ref**2, u_ref * p_ref, p_ref**2])


def evolve_mode_rk4(
    state: GaussianState, params: ModeDynamicsParams, t: float, n_steps: int | None = None
) -> GaussianState:
    """Fixed-step 4th-order integration of the moment equations.

    With n_steps=None the step count doubles until halving the step changes
    every moment by less than 1e-10 relative to its natural scale.  This is
    the cross-check path; evolve_mode is the authoritative solution.
    """
    _check_time(t)
    if t == 0.0:
        return state
    mu = params.mode_mass
    q = constants().hbar * mu * params.omega_G**2
    y0 = state.moments()
    if n_steps is not None:
        if n_steps < 1:
            raise ValidationError("n_steps must be >= 1")
        y = _rk4_run(y0, mu, params.omega_k, q, t, n_steps)
        return GaussianState(*[float(v) for v in y])

    scales = _moment_scales(state, params, t)
    n = max(32, int(math.ceil(4.0 * max(params.omega_k, params.omega_G) * t)))
    prev = _rk4_run(y0, mu, params.omega_k, q, t, n)
    while True:
        n *= 2
        if n > 2**24:
            raise RuntimeError("step-halving control failed to converge")
        cur = _rk4_run(y0, mu, params.omega_k, q, t, n)
        rel = np.max(np.abs(cur - prev) / np.maximum(np.abs(cur), scales))
        if rel < _RK4_CONTROL:
            return GaussianState(*[float(v) for v in cur])
        prev = cur


def mode_energy(state: GaussianState, params: ModeDynamicsParams) -> float:
    """Mean energy (erg): kinetic plus elastic, times n_components."""
    mu = params.mode_mass
    kinetic = (state.cov_pipi + state.mean_pi**2) / (2.0 * mu)
    elastic = mu * params.omega_k**2 * (state.cov_uu + state.mean_u**2) / 2.0
    return params.n_components * (kinetic + elastic)


@dataclass(frozen=True)
class ComState:
    """Center of mass of a bulk of mass M: one GaussianState per axis,
    with (mean_u, mean_pi) read as (X, P)."""

    mass: float
    axes: tuple[GaussianState, GaussianState, GaussianState]

    def __post_init__(self) -> None:
        if not (isinstance(self.mass, (int, float)) and math.isfinite(self.mass) and self.mass > 0):
            raise ValidationError(f"mass must be finite and positive, got {self.mass!r}")
        if len(self.axes) != 3 or not all(isinstance(a, GaussianState) for a in self.axes):
            raise ValidationError("axes must be three GaussianState instances")


def evolve_com_axis(state: GaussianState, M: float, omega_G: float, t: float) -> GaussianState:
    """One axis of the free c.o.m. with position decoherence, in closed form:

    cov_PP(t)  = cov_PP + hbar M omega_G^2 t
    cov_XP(t)  = cov_XP + cov_PP t/M + hbar omega_G^2 t^2 / 2
    cov_XX(t)  = cov_XX + 2 cov_XP t/M + cov_PP t^2/M^2 + hbar omega_G^2 t^3/(3M)
    """
    params = ModeDynamicsParams(mode_mass=M, omega_k=0.0, omega_G=omega_G, n_components=1)
    return evolve_mode(state, params, t)


def evolve_com(state: ComState, omega_G: float, t: float) -> ComState:
    """Evolve all three axes of the center of mass."""
    if not (isinstance(omega_G, (int, float)) and math.isfinite(omega_G) and omega_G >= 0):
        raise ValidationError(f"omega_G must be finite and non-negative, got {omega_G!r}")
    axes = tuple(evolve_com_axis(a, state.mass, omega_G, t) for a in state.axes)
    return replace(state, axes=axes)


def com_kinetic_energy(state: ComState) -> float:
    """Total kinetic energy over the three axes, erg."""
    return sum((a.cov_pipi + a.mean_pi**2) / (2.0 * state.mass) for a in state.axes)


def minimum_uncertainty_com(M: float, spread: float) -> ComState:
    """Isotropic minimum-uncertainty wavepacket with position spread per axis (cm)."""
    if not spread > 0.0:
        raise ValidationError(f"spread must be positive, got {spread!r}")
    hbar = constants().hbar
    axis = GaussianState(
        mean_u=0.0,
        mean_pi=0.0,
        cov_uu=spread**2,
        cov_upi=0.0,
        cov_pipi=hbar**2 / (4.0 * spread**2),
    )
    return ComState(mass=M, axes=(axis, axis, axis))


def com_superposition_decay_rate(M: float, omega_G: float, d: float) -> float:
    """Decay rate (s^-1) of the off-diagonal element between two c.o.m.
    positions separated by d along one axis:  Gamma = M omega_G^2 d^2 / (2 hbar).

    The position-space double commutator multiplies <X|rho|X'> by
    exp(-M omega_G^2 (X - X')^2 t / (2 hbar)), so the rate is quadratic in d
    and vanishes on the diagonal.
    """
    if not M > 0.0:
        raise ValidationError(f"M must be positive, got {M!r}")
    if not omega_G >= 0.0:
        raise ValidationError(f"omega_G must be non-negative, got {omega_G!r}")
    if not d >= 0.0:
        raise ValidationError(f"d must be non-negative, got {d!r}")
    return M * omega_G**2 * d**2 / (2.0 * constants().hbar)


def check_small_displacement_validity(state: GaussianState, sigma: float) -> float:
    """RMS displacement over sigma; ratios >= 0.1 leave the regime in which
    the mode master equation was derived (flag it, do not error)."""
    if not sigma > 0.0:
        raise ValidationError(f"sigma must be positive, got {sigma!r}")
    return math.sqrt(state.cov_uu + state.mean_u**2) / sigma

"""Figure rendering for CLI reports.

Every plotting helper takes already-computed report data and a target path,
renders with the non-interactive Agg backend and returns the path.  Figures
are a convenience companion to the CSV/JSON output, which remains the
authoritative record.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "census_figure",
    "timeseries_figure",
    "heating_figure",
    "oracle_figure",
]

_CLASS_COLORS = {
    "decoherence-dominated": "tab:red",
    "crossover": "tab:orange",
    "elasticity-dominated": "tab:blue",
}


def _new_axes(width=6.4, height=4.2):
    fig, ax = plt.subplots(figsize=(width, height), dpi=130)
    ax.grid(True, which="both", alpha=0.3)
    return fig, ax


def _finish(fig, path: str) -> str:
    fig.tight_layout()
    fig.savefig(path, metadata={})
    plt.close(fig)
    return path


def census_figure(modes, omega_G: float, dominance_boundary_inv_k: float, path: str) -> str:
    """Dispersion scatter omega_k(|k|) colored by dominance class."""
    fig, ax = _new_axes()
    by_class: dict[str, list] = {}
    for mode in modes:
        by_class.setdefault(mode.classification.value, []).append((mode.k_mag, mode.omega_k))
    for label, pts in by_class.items():
        arr = np.asarray(pts)
        ax.loglog(arr[:, 0], arr[:, 1], ".", ms=3, color=_CLASS_COLORS[label], label=label)
    ax.axhline(omega_G, color="k", lw=0.8, ls="--", label="omega_G")
    ax.axvline(1.0 / dominance_boundary_inv_k, color="k", lw=0.8, ls=":")
    ax.set_xlabel("|k|  [1/cm]")
    ax.set_ylabel("omega_k  [rad/s]")
    ax.legend(fontsize=8)
    ax.set_title("mode census")
    return _finish(fig, path)


def timeseries_figure(rows, path: str) -> str:
    """Three panels: means, covariances, energy; rows as in the CSV output."""
    data = np.asarray(rows, dtype=float)
    t = data[:, 0]
    fig, axes = plt.subplots(3, 1, figsize=(6.4, 7.5), dpi=130, sharex=True)
    axes[0].plot(t, data[:, 1], label="mean_u")
    axes[0].plot(t, data[:, 2], label="mean_pi")
    axes[0].set_ylabel("means")
    axes[1].plot(t, data[:, 3], label="cov_uu")
    axes[1].plot(t, data[:, 4], label="cov_upi")
    axes[1].plot(t, data[:, 5], label="cov_pipi")
    axes[1].set_ylabel("covariances")
    axes[2].plot(t, data[:, 6], color="tab:green", label="energy")
    axes[2].set_ylabel("energy  [erg]")
    axes[2].set_xlabel("t  [s]")
    for ax in axes:
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=8)
    return _finish(fig, path)


def heating_figure(budget, path: str) -> str:
    """Log-scale bars of the budget's rate entries."""
    entries = [
        ("total standard", budget.total_standard_rate),
        ("per constituent", budget.per_constituent_rate),
        ("per d.o.f. (simple)", budget.heating_per_dof_simple),
        ("per mode", budget.per_mode_rate),
    ]
    if budget.cutoff_lambda is not None:
        entries.append(("total cutoff", budget.total_cutoff_rate))
    labels = [e[0] for e in entries]
    values = [max(e[1], 1e-300) for e in entries]
    fig, ax = _new_axes(7.0, 4.2)
    ax.bar(range(len(values)), values, color="tab:purple")
    ax.set_yscale("log")
    ax.set_xticks(range(len(values)))
    ax.set_xticklabels(labels, rotation=20, ha="right", fontsize=8)
    ax.set_ylabel("rate  [erg/s]")
    ax.set_title("heating budget")
    return _finish(fig, path)


def oracle_figure(times, fock_moments, gaussian_moments, path: str) -> str:
    """Overlay the five moments from both solvers plus their absolute gap."""
    times = np.asarray(times, dtype=float)
    fock = np.asarray(fock_moments, dtype=float)
    gauss = np.asarray(gaussian_moments, dtype=float)
    labels = ["mean_u", "mean_pi", "cov_uu", "cov_upi", "cov_pipi"]
    fig, axes = plt.subplots(2, 1, figsize=(6.4, 6.4), dpi=130, sharex=True)
    for i, label in enumerate(labels):
        line, = axes[0].plot(times, gauss[:, i], lw=1.0, label=f"{label} (moments)")
        axes[0].plot(times, fock[:, i], "x", ms=3, color=line.get_color())
    axes[0].set_ylabel("moments (natural units)")
    axes[0].legend(fontsize=7, ncol=2)
    gap = np.abs(fock - gauss).max(axis=1)
    axes[1].semilogy(times, np.maximum(gap, 1e-18), color="tab:red")
    axes[1].set_ylabel("max |difference|")
    axes[1].set_xlabel("t  [s]")
    for ax in axes:
        ax.grid(True, alpha=0.3)
    return _finish(fig, path)

"""Command-line front end.

Subcommands wrap the library one to one: material, catness, census, evolve,
heating, oracle.  Every command prints a deterministic JSON report (stdout
or --out); census and evolve additionally write CSV tables.  When the
delimited output goes to a file, a matplotlib figure is rendered next to it
(same stem, .png) unless --no-plot is given.

Exit codes: 0 success, 2 input validation failure, 3 numerical guard
(truncated-basis leakage in the oracle).

All physical quantities are CGS in flags and files; nothing is converted.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import __version__
from .catness import (
    QuadratureGrid,
    catness,
    catness_quadrature_oracle,
    mass_config_from_json,
)
from .constants import constants
from .errors import TruncationLeakageError, ValidationError
from .fock_oracle import (
    coherence_decay_fock,
    coherent_fock_state,
    evolve_fock,
    fock_energy,
    fock_moments,
    fock_moments_natural,
)
from .gaussian_dynamics import (
    ComState,
    GaussianState,
    ModeDynamicsParams,
    check_small_displacement_validity,
    com_kinetic_energy,
    com_superposition_decay_rate,
    evolve_com,
    evolve_mode,
    ground_state,
    minimum_uncertainty_com,
    mode_energy,
)
from .heating import budget_notes, cutoff_budget, standard_budget
from .material import (
    FNucl,
    Material,
    derive_scales,
    material_from_json,
    material_to_json,
    preset,
)
from .mode_census import BoxSpec, census_summary, enumerate_modes
from .reportio import dumps_json, csv_lines, write_text

_FNUCL = {"simple": FNucl.SIMPLE, "acoustic": FNucl.ACOUSTIC}


def _add_material_source(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--preset", help="built-in material name")
    group.add_argument("--file", help="path to a material JSON document")
    parser.add_argument(
        "--fnucl",
        choices=sorted(_FNUCL),
        default="acoustic",
        help="nuclear-density variant for omega_G (default: acoustic)",
    )


def _load_material(args) -> tuple[str, Material]:
    if args.preset is not None:
        return args.preset, preset(args.preset)
    try:
        with open(args.file, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ValidationError(f"cannot read material file: {exc}") from exc
    return material_from_json(text)


def _emit_json(doc, out_path: str | None) -> None:
    text = dumps_json(doc)
    if out_path is None:
        sys.stdout.write(text)
    else:
        write_text(out_path, text)


def _figure_path(data_path: str) -> str:
    stem, _ = os.path.splitext(data_path)
    return stem + ".png"


def _scales_doc(scales) -> dict:
    return {
        "f_nucl_simple": scales.f_nucl_simple,
        "f_nucl_acoustic": scales.f_nucl_acoustic,
        "omega_G_nucl": scales.omega_G_nucl,
        "lambda_dominance": scales.lambda_dominance,
        "heating_per_dof": scales.heating_per_dof,
    }


def cmd_material(args) -> int:
    name, mat = _load_material(args)
    scales = derive_scales(mat, _FNUCL[args.fnucl])
    doc = material_to_json(name, mat)
    doc["f_nucl_variant"] = args.fnucl
    doc["derived_scales"] = _scales_doc(scales)
    _emit_json(doc, args.out)
    return 0


def _load_config(path: str):
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ValidationError(f"cannot read configuration file: {exc}") from exc
    return mass_config_from_json(text)


def _catness_doc(result) -> dict:
    return {
        "u11": result.u11,
        "u22": result.u22,
        "u12": result.u12,
        "ell_g_sq": result.ell_g_sq,
        "tau_g": result.tau_g,
    }


def cmd_catness(args) -> int:
    f1 = _load_config(args.f1)
    f2 = _load_config(args.f2)
    closed = catness(f1, f2)
    doc = _catness_doc(closed)
    if args.oracle:
        spacing = args.spacing if args.spacing is not None else f1.sigma / 6.0
        grid = QuadratureGrid(spacing=spacing, margin=args.grid_margin)
        oracle = catness_quadrature_oracle(f1, f2, grid)
        potentials = ("u11", "u22", "u12")
        agreement = max(
            abs(getattr(oracle, name) - getattr(closed, name)) / abs(getattr(closed, name))
            for name in potentials
        )
        doc = {
            "closed_form": _catness_doc(closed),
            "oracle": _catness_doc(oracle),
            "grid_spacing": spacing,
            "agreement": agreement,
        }
    _emit_json(doc, args.out)
    return 0


def cmd_census(args) -> int:
    name, mat = _load_material(args)
    box = BoxSpec(edge_lengths=tuple(args.box))
    which = _FNUCL[args.fnucl]
    scales = derive_scales(mat, which)
    if (args.k_max is None) == (args.cutoff is None):
        raise ValidationError("census needs exactly one of --k-max or --cutoff")
    if args.k_max is not None:
        modes = enumerate_modes(box, mat, args.k_max, args.margin_factor, which)
        counts: dict[str, int] = {}
        for mode in modes:
            counts[mode.classification.value] = counts.get(mode.classification.value, 0) + 1
        doc = {
            "material": name,
            "box_edges": list(box.edge_lengths),
            "k_max": args.k_max,
            "dominance_margin": args.margin_factor,
            "omega_G_nucl": scales.omega_G_nucl,
            "dominance_boundary_inv_k": scales.lambda_dominance,
            "total_modes": len(modes),
            "class_counts": {
                key: counts.get(key, 0)
                for key in ("decoherence-dominated", "crossover", "elasticity-dominated")
            },
        }
        if args.csv is not None:
            rows = [
                (m.k_vector[0], m.k_vector[1], m.k_vector[2], m.k_mag, m.omega_k, m.classification.value)
                for m in modes
            ]
            write_text(args.csv, csv_lines(("k_x", "k_y", "k_z", "k_mag", "omega_k", "class"), rows))
            if not args.no_plot:
                from .plotting import census_figure

                census_figure(modes, scales.omega_G_nucl, scales.lambda_dominance, _figure_path(args.csv))
        _emit_json(doc, args.out)
        return 0
    mass = args.mass if args.mass is not None else mat.mass_density * box.volume
    summary = census_summary(mat, mass, box.volume, args.cutoff, which)
    doc = {
        "material": name,
        "box_edges": list(box.edge_lengths),
        "volume": box.volume,
        "total_mass": mass,
        "cutoff_inv_k": args.cutoff,
        "total_modes_below_cutoff": summary.total_modes_below_cutoff,
        "nuclei_count": summary.nuclei_count,
        "ratio": summary.ratio,
        "dominance_boundary_inv_k": summary.dominance_boundary_inv_k,
    }
    _emit_json(doc, args.out)
    return 0


def _slope(times, values) -> float:
    return float(np.polyfit(np.asarray(times), np.asarray(values), 1)[0])


def cmd_evolve(args) -> int:
    hbar = constants().hbar
    times = np.linspace(0.0, args.t_final, args.n_samples)
    if args.kind == "mode":
        params = ModeDynamicsParams(
            mode_mass=args.mode_mass,
            omega_k=args.omega_k,
            omega_G=args.omega_g,
            n_components=args.components,
        )
        explicit = [args.mean_u, args.mean_pi, args.cov_uu, args.cov_upi, args.cov_pipi]
        if any(v is not None for v in explicit):
            if any(v is None for v in explicit):
                raise ValidationError(
                    "give all five of --mean-u --mean-pi --cov-uu --cov-upi --cov-pipi or none"
                )
            state = GaussianState(*explicit)
        else:
            state = ground_state(params)
        rows = []
        for t in times:
            evolved = evolve_mode(state, params, float(t))
            rows.append(
                (
                    float(t),
                    evolved.mean_u,
                    evolved.mean_pi,
                    evolved.cov_uu,
                    evolved.cov_upi,
                    evolved.cov_pipi,
                    mode_energy(evolved, params),
                )
            )
        expected_slope = params.n_components * hbar * params.omega_G**2 / 2.0
        doc = {
            "kind": "mode",
            "mode_mass": params.mode_mass,
            "omega_k": params.omega_k,
            "omega_G": params.omega_G,
            "n_components": params.n_components,
            "t_final": args.t_final,
            "n_samples": args.n_samples,
            "energy_slope": _slope(times, [r[6] for r in rows]),
            "expected_energy_slope": expected_slope,
        }
        if args.sigma is not None:
            final = evolve_mode(state, params, args.t_final)
            doc["displacement_over_sigma"] = check_small_displacement_validity(final, args.sigma)
            doc["outside_derivation_regime"] = doc["displacement_over_sigma"] >= 0.1
    else:
        com = minimum_uncertainty_com(args.mass, args.spread)
        rows = []
        for t in times:
            evolved = evolve_com(com, args.omega_g, float(t))
            axis = evolved.axes[0]
            rows.append(
                (
                    float(t),
                    axis.mean_u,
                    axis.mean_pi,
                    axis.cov_uu,
                    axis.cov_upi,
                    axis.cov_pipi,
                    com_kinetic_energy(evolved),
                )
            )
        doc = {
            "kind": "com",
            "mass": args.mass,
            "omega_G": args.omega_g,
            "spread": args.spread,
            "t_final": args.t_final,
            "n_samples": args.n_samples,
            "kinetic_energy_slope": _slope(times, [r[6] for r in rows]),
            "expected_kinetic_energy_slope": 3.0 * hbar * args.omega_g**2 / 2.0,
        }
    write_text(args.csv, csv_lines(("t", "mean_u", "mean_pi", "cov_uu", "cov_upi", "cov_pipi", "energy"), rows))
    if not args.no_plot:
        from .plotting import timeseries_figure

        timeseries_figure(rows, _figure_path(args.csv))
    _emit_json(doc, args.out)
    return 0


def cmd_heating(args) -> int:
    name, mat = _load_material(args)
    if args.cutoff is not None:
        if args.volume is None:
            raise ValidationError("--cutoff requires --volume")
        budget = cutoff_budget(mat, args.mass, args.volume, args.cutoff, args.components)
    else:
        budget = standard_budget(mat, args.mass, args.components)
    doc = {
        "material": name,
        "total_mass": budget.total_mass,
        "per_constituent_rate": budget.per_constituent_rate,
        "total_standard_rate": budget.total_standard_rate,
        "per_mode_rate": budget.per_mode_rate,
        "n_components": budget.n_components,
        "modes_heated": budget.modes_heated,
        "total_cutoff_rate": budget.total_cutoff_rate,
        "cutoff_lambda": budget.cutoff_lambda,
        "nuclei_count": budget.nuclei_count,
        "modes_to_nuclei_ratio": budget.modes_to_nuclei_ratio,
        "heating_per_dof_simple": budget.heating_per_dof_simple,
        "per_constituent_over_per_dof": budget.per_constituent_over_per_dof,
        "notes": budget_notes(budget),
    }
    _emit_json(doc, args.out)
    if args.out is not None and not args.no_plot:
        from .plotting import heating_figure

        heating_figure(budget, _figure_path(args.out))
    return 0


def cmd_oracle(args) -> int:
    params = ModeDynamicsParams(
        mode_mass=args.mode_mass, omega_k=args.omega_k, omega_G=args.omega_g, n_components=1
    )
    hbar = constants().hbar
    if args.coherence:
        if args.d_natural is None:
            raise ValidationError("--coherence requires --d-natural")
        u_scale = math.sqrt(hbar / (params.mode_mass * params.omega_k))
        d = args.d_natural * u_scale
        rate_formula = com_superposition_decay_rate(params.mode_mass, params.omega_G, d)
        t_final = args.t_final if args.t_final is not None else 0.15 / rate_formula
        times = np.linspace(0.0, t_final, args.n_samples)[1:]
        values = coherence_decay_fock(params, d, times, args.n_max, args.dt)
        fitted = -_slope(times, np.log(values))
        doc = {
            "kind": "coherence",
            "mode_mass": params.mode_mass,
            "omega_k": params.omega_k,
            "omega_G": params.omega_G,
            "n_max": args.n_max,
            "d": d,
            "d_natural": args.d_natural,
            "t_final": t_final,
            "fitted_rate": fitted,
            "formula_rate": rate_formula,
            "rel_difference": fitted / rate_formula - 1.0,
        }
        _emit_json(doc, args.out)
        return 0

    period = 2.0 * math.pi / params.omega_k
    t_final = args.t_final if args.t_final is not None else period
    dt = args.dt if args.dt is not None else period / 6000.0
    state = coherent_fock_state(args.n_max, params, complex(args.alpha_re, args.alpha_im))
    initial = fock_moments(state)
    gauss0 = GaussianState(*[float(v) for v in initial])
    u_scale = math.sqrt(hbar / (params.mode_mass * params.omega_k))
    pi_scale = math.sqrt(hbar * params.mode_mass * params.omega_k)
    to_natural = np.array([u_scale, pi_scale, u_scale**2, u_scale * pi_scale, pi_scale**2])
    times = np.linspace(0.0, t_final, args.n_samples)
    rows = []
    fock_nat = []
    gauss_nat = []
    energies = []
    current = state
    previous_t = 0.0
    for t in times:
        current = evolve_fock(current, float(t) - previous_t, dt)
        previous_t = float(t)
        f_nat = fock_moments_natural(current)
        g_nat = evolve_mode(gauss0, params, float(t)).moments() / to_natural
        fock_nat.append(f_nat)
        gauss_nat.append(g_nat)
        energies.append(fock_energy(current))
        rows.append((float(t), *f_nat, *g_nat))
    fock_nat = np.asarray(fock_nat)
    gauss_nat = np.asarray(gauss_nat)
    max_diff = float(np.max(np.abs(fock_nat - gauss_nat)))
    slope = _slope(times, energies)
    expected_slope = hbar * params.omega_G**2 / 2.0
    doc = {
        "kind": "moments",
        "mode_mass": params.mode_mass,
        "omega_k": params.omega_k,
        "omega_G": params.omega_G,
        "n_max": args.n_max,
        "alpha": [args.alpha_re, args.alpha_im],
        "t_final": t_final,
        "dt": dt,
        "n_samples": args.n_samples,
        "max_abs_moment_difference_natural": max_diff,
        "fock_energy_slope": slope,
        "expected_energy_slope": expected_slope,
        "slope_rel_difference": (slope / expected_slope - 1.0) if expected_slope > 0 else None,
    }
    if args.csv is not None:
        header = (
            "t",
            "fock_mean_u", "fock_mean_pi", "fock_cov_uu", "fock_cov_upi", "fock_cov_pipi",
            "gauss_mean_u", "gauss_mean_pi", "gauss_cov_uu", "gauss_cov_upi", "gauss_cov_pipi",
        )
        write_text(args.csv, csv_lines(header, rows))
        if not args.no_plot:
            from .plotting import oracle_figure

            oracle_figure(times, fock_nat, gauss_nat, _figure_path(args.csv))
    _emit_json(doc, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gravdec",
        description="Gravity-related spontaneous decoherence of bulk matter: "
        "catness, mode census, Gaussian dynamics, heating budgets.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("material", help="derived decoherence scales of a material")
    _add_material_source(p)
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.set_defaults(func=cmd_material)

    p = sub.add_parser("catness", help="catness of two mass configurations")
    p.add_argument("f1", help="first configuration JSON file")
    p.add_argument("f2", help="second configuration JSON file")
    p.add_argument("--oracle", action="store_true", help="cross-check with the quadrature oracle")
    p.add_argument("--spacing", type=float, help="oracle grid spacing in cm (default sigma/6)")
    p.add_argument("--grid-margin", type=float, help="oracle box margin in cm (default 6 sigma)")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.set_defaults(func=cmd_catness)

    p = sub.add_parser("census", help="enumerate or count acoustic modes")
    _add_material_source(p)
    p.add_argument("--box", nargs=3, type=float, required=True, metavar=("LX", "LY", "LZ"),
                   help="box edge lengths in cm")
    p.add_argument("--k-max", type=float, help="enumerate modes with |k| <= k_max (1/cm)")
    p.add_argument("--cutoff", type=float, help="count modes with 1/k above this length (cm)")
    p.add_argument("--margin-factor", type=float, default=10.0,
                   help="dominance margin for classification (default 10)")
    p.add_argument("--mass", type=float, help="bulk mass in g (default density * volume)")
    p.add_argument("--csv", help="write the per-mode census CSV here (enumeration only)")
    p.add_argument("--out", help="write the JSON summary here instead of stdout")
    p.add_argument("--no-plot", action="store_true", help="skip the figure next to the CSV")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("evolve", help="Gaussian evolution time series")
    p.add_argument("--kind", choices=("mode", "com"), required=True)
    p.add_argument("--mode-mass", type=float, default=1.0, help="mode mass mu in g")
    p.add_argument("--omega-k", type=float, default=0.0, help="mode frequency in rad/s")
    p.add_argument("--omega-g", type=float, required=True, help="Newton-oscillator frequency in rad/s")
    p.add_argument("--components", type=int, choices=(1, 3), default=3)
    p.add_argument("--mass", type=float, default=1.0, help="c.o.m. mass in g (kind=com)")
    p.add_argument("--spread", type=float, default=1e-4,
                   help="initial c.o.m. position spread in cm (kind=com)")
    p.add_argument("--mean-u", type=float, help="initial mean displacement (kind=mode)")
    p.add_argument("--mean-pi", type=float, help="initial mean momentum (kind=mode)")
    p.add_argument("--cov-uu", type=float, help="initial displacement variance (kind=mode)")
    p.add_argument("--cov-upi", type=float, help="initial symmetrized cross covariance (kind=mode)")
    p.add_argument("--cov-pipi", type=float, help="initial momentum variance (kind=mode)")
    p.add_argument("--sigma", type=float, help="smearing width for the validity ratio report")
    p.add_argument("--t-final", type=float, required=True, help="final time in s")
    p.add_argument("--n-samples", type=int, default=51)
    p.add_argument("--csv", required=True, help="write the time series CSV here")
    p.add_argument("--out", help="write the JSON summary here instead of stdout")
    p.add_argument("--no-plot", action="store_true", help="skip the figure next to the CSV")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("heating", help="heating budget, standard or wavelength-cutoff")
    _add_material_source(p)
    p.add_argument("--mass", type=float, required=True, help="bulk mass in g")
    p.add_argument("--volume", type=float, help="bulk volume in cm^3 (cutoff model)")
    p.add_argument("--cutoff", type=float, help="cutoff wavelength in cm; omit for the standard model")
    p.add_argument("--components", type=int, choices=(1, 3), default=3)
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--no-plot", action="store_true", help="skip the figure next to --out")
    p.set_defaults(func=cmd_heating)

    p = sub.add_parser("oracle", help="dense number-basis oracle vs Gaussian moments")
    p.add_argument("--mode-mass", type=float, default=1.0, help="mode mass mu in g")
    p.add_argument("--omega-k", type=float, required=True, help="mode frequency in rad/s (> 0)")
    p.add_argument("--omega-g", type=float, required=True, help="Newton-oscillator frequency in rad/s")
    p.add_argument("--n-max", type=int, default=30, help="truncation dimension")
    p.add_argument("--t-final", type=float, help="final time in s (default one period)")
    p.add_argument("--dt", type=float, help="integrator target step in s")
    p.add_argument("--n-samples", type=int, default=33)
    p.add_argument("--alpha-re", type=float, default=0.7, help="initial coherent amplitude, real part")
    p.add_argument("--alpha-im", type=float, default=0.2, help="initial coherent amplitude, imaginary part")
    p.add_argument("--coherence", action="store_true",
                   help="fit the off-diagonal decay of a displaced superposition instead")
    p.add_argument("--d-natural", type=float, help="superposition separation in natural units")
    p.add_argument("--csv", help="write the moment comparison CSV here")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--no-plot", action="store_true", help="skip the figure next to the CSV")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TruncationLeakageError as exc:
        print(f"numerical guard: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

"""Parameter sweeps, comparison reports and CSV emission.

All runners are deterministic: no wall clock, no randomness, ordered rows,
floats rendered with Python's shortest round-trip repr.  A failed grid
point never aborts the scan; it is emitted with an error message in the
``status`` column and empty numeric cells.
"""

from __future__ import annotations

import csv
import io
import math
from typing import Any, Dict, List, Tuple

from ._version import __version__
from .config import (
    build_material_model,
    build_settings,
    build_transition,
    config_hash,
    config_lines,
    make_config,
    sweep_grid,
)
from .constants import CODATA2018, constants_checksum, wavenumber
from .errors import ConfigError
from .materials import ComplexConductivity
from .slab import (
    Geometry,
    analytic_tau_normal,
    analytic_tau_superconductor,
    gamma_free,
    thermal_occupation,
    total_rate,
)

__all__ = [
    "RATE_COLUMNS",
    "CONDUCTIVITY_COLUMNS",
    "COMPARE_COLUMNS",
    "GAP_COLUMNS",
    "run_scan",
    "run_conductivity_table",
    "run_compare",
    "run_gap_table",
    "render_csv",
    "write_csv",
    "PRESETS",
    "preset_config",
]

RATE_COLUMNS = ["axis_value", "T_K", "H_m", "z_m", "sigma1", "sigma2",
                "eps_re", "eps_im", "i_par", "i_perp", "gamma_free",
                "gamma_slab", "occupation", "gamma_total", "tau_s", "status"]

CONDUCTIVITY_COLUMNS = ["axis_value", "T_K", "T_over_Tc", "sigma1", "sigma2",
                        "sigma1_norm", "sigma2_norm", "norm_sigma1",
                        "norm_sigma2", "status"]

COMPARE_COLUMNS = ["axis_value", "T_K", "H_m", "z_m", "tau_exact_s",
                   "tau_analytic_s", "ratio", "formula", "valid_lambda_delta",
                   "valid_lambda_z", "valid_z_wavelength", "valid_delta_z",
                   "status"]

GAP_COLUMNS = ["axis_value", "T_K", "T_over_Tc", "delta_J", "delta_meV", "status"]


def _header(cfg: Dict[str, Any]) -> List[str]:
    # output.path has no effect on the computed rows; leaving it out keeps
    # the emitted bytes identical regardless of where they are written
    physics = {k: v for k, v in cfg.items() if k != "output.path"}
    lines = [f"# spinflip {__version__}",
             f"# config_hash={config_hash(physics)}",
             f"# constants_checksum={constants_checksum()}"]
    lines += [f"# {line}" for line in config_lines(physics)]
    return lines


def _axis_values(cfg: Dict[str, Any]) -> Tuple[str, List[float]]:
    return cfg["sweep.axis"], sweep_grid(cfg)


def _point(cfg: Dict[str, Any], axis: str, value: float) -> Tuple[float, float, float]:
    """(T, H, z) for one grid point."""
    T = cfg["material.T_K"]
    H = cfg["geometry.H_m"]
    z = cfg["geometry.z_m"]
    if axis == "temperature":
        T = value
    elif axis == "thickness":
        H = value
    else:
        z = value
    return T, H, z


def run_scan(cfg: Dict[str, Any],
             constants=CODATA2018) -> Tuple[List[str], List[Dict[str, Any]]]:
    """Evaluate the total rate on the sweep grid; returns (header, rows)."""
    settings = build_settings(cfg)
    spec = build_transition(cfg)
    omega = spec.omega
    k = wavenumber(spec.nu, constants)
    model = build_material_model(cfg, omega, settings, constants)
    axis, values = _axis_values(cfg)

    sigma_cache: Dict[float, Tuple[ComplexConductivity, complex]] = {}
    rows: List[Dict[str, Any]] = []
    for value in values:
        T, H, z = _point(cfg, axis, value)
        row: Dict[str, Any] = {c: "" for c in RATE_COLUMNS}
        row["axis_value"] = value
        row["T_K"] = T
        row["H_m"] = H
        row["z_m"] = z
        try:
            if T not in sigma_cache:
                sigma = model.conductivity(T)
                sigma_cache[T] = (sigma, model.permittivity(T))
            sigma, eps = sigma_cache[T]
            geom = Geometry(z=z, H=H, k=k)
            res = total_rate(spec, geom, eps, T, settings, constants)
            row.update(sigma1=sigma.sigma1, sigma2=sigma.sigma2,
                       eps_re=eps.real, eps_im=eps.imag,
                       i_par=res.i_par, i_perp=res.i_perp,
                       gamma_free=res.gamma_free, gamma_slab=res.gamma_slab,
                       occupation=res.occupation_factor,
                       gamma_total=res.gamma_total, tau_s=res.tau,
                       status="ok")
        except Exception as exc:  # noqa: BLE001 - row-level fault isolation
            row["status"] = f"error: {exc}"
        rows.append(row)
    return _header(cfg), rows


def _conductivity_norms(cfg, model) -> Tuple[float, float]:
    """Normalization constants (for sigma1, sigma2) for the table."""
    tag = cfg["material.model"]
    if tag in ("two_fluid_gc", "ag_two_fluid"):
        from .materials import london_conductivity
        return cfg["material.sigma_n"], london_conductivity(
            model.params, model.omega)
    if tag == "mb_clean":
        return cfg["material.sigma_n"], cfg["material.sigma_n"]
    if tag == "dirty_bcs":
        from .materials import london_conductivity
        return model.normal_state_sigma1(), london_conductivity(
            model.params, model.omega)
    return 1.0, 1.0


def run_conductivity_table(cfg: Dict[str, Any],
                           constants=CODATA2018) -> Tuple[List[str], List[Dict[str, Any]]]:
    """Tabulate the selected conductivity model over a temperature grid."""
    if cfg["sweep.axis"] != "temperature":
        raise ConfigError("conductivity tables sweep temperature only")
    settings = build_settings(cfg)
    spec = build_transition(cfg)
    model = build_material_model(cfg, spec.omega, settings, constants)
    _, values = _axis_values(cfg)
    tc = model.Tc
    norm1, norm2 = _conductivity_norms(cfg, model)

    rows: List[Dict[str, Any]] = []
    for T in values:
        row: Dict[str, Any] = {c: "" for c in CONDUCTIVITY_COLUMNS}
        row["axis_value"] = T
        row["T_K"] = T
        row["T_over_Tc"] = (T / tc) if tc else ""
        row["norm_sigma1"] = norm1
        row["norm_sigma2"] = norm2
        try:
            sigma = model.conductivity(T)
            row.update(sigma1=sigma.sigma1, sigma2=sigma.sigma2,
                       sigma1_norm=sigma.sigma1 / norm1,
                       sigma2_norm=sigma.sigma2 / norm2, status="ok")
        except Exception as exc:  # noqa: BLE001
            row["status"] = f"error: {exc}"
        rows.append(row)
    return _header(cfg), rows


def run_compare(cfg: Dict[str, Any],
                constants=CODATA2018) -> Tuple[List[str], List[Dict[str, Any]]]:
    """Exact lifetime vs the closed-form approximations, point by point."""
    settings = build_settings(cfg)
    spec = build_transition(cfg)
    k = wavenumber(spec.nu, constants)
    model = build_material_model(cfg, spec.omega, settings, constants)
    axis, values = _axis_values(cfg)
    choice = cfg["compare.formula"]

    rows: List[Dict[str, Any]] = []
    for value in values:
        T, H, z = _point(cfg, axis, value)
        row: Dict[str, Any] = {c: "" for c in COMPARE_COLUMNS}
        row["axis_value"] = value
        row["T_K"] = T
        row["H_m"] = H
        row["z_m"] = z
        try:
            sigma = model.conductivity(T)
            eps = model.permittivity(T)
            geom = Geometry(z=z, H=H, k=k)
            exact = total_rate(spec, geom, eps, T, settings, constants).tau
            if sigma.sigma1 == 0.0 and sigma.sigma2 == 0.0:
                nbar1 = thermal_occupation(spec.nu, T, constants) + 1.0
                analytic = 1.0 / (gamma_free(spec, constants) * nbar1)
                formula, validity = "vacuum", None
            elif choice == "superconductor" or (choice == "auto" and sigma.sigma2 > 0):
                analytic, validity = analytic_tau_superconductor(
                    spec, geom, sigma, T, constants)
                formula = "superconductor"
            else:
                analytic, validity = analytic_tau_normal(
                    spec, geom, sigma.sigma1, T, constants)
                formula = "normal"
            row.update(tau_exact_s=exact, tau_analytic_s=analytic,
                       ratio=analytic / exact, formula=formula, status="ok")
            if validity is not None:
                row["valid_lambda_delta"] = _flag(validity.lambda_vs_delta)
                row["valid_lambda_z"] = _flag(validity.lambda_vs_z)
                row["valid_z_wavelength"] = _flag(validity.z_vs_wavelength)
                row["valid_delta_z"] = _flag(validity.delta_vs_z)
        except Exception as exc:  # noqa: BLE001
            row["status"] = f"error: {exc}"
        rows.append(row)
    return _header(cfg), rows


def run_gap_table(cfg: Dict[str, Any],
                  constants=CODATA2018) -> Tuple[List[str], List[Dict[str, Any]]]:
    """Superconducting gap over a temperature grid."""
    from .bcs import gap_energy
    from .config import build_superconductor_params

    if cfg["sweep.axis"] != "temperature":
        raise ConfigError("gap tables sweep temperature only")
    settings = build_settings(cfg)
    params = build_superconductor_params(cfg)
    _, values = _axis_values(cfg)
    rows: List[Dict[str, Any]] = []
    for T in values:
        row: Dict[str, Any] = {c: "" for c in GAP_COLUMNS}
        row["axis_value"] = T
        row["T_K"] = T
        row["T_over_Tc"] = T / params.Tc
        try:
            delta = gap_energy(T, params, settings, constants)
            row.update(delta_J=delta, delta_meV=delta / constants.eV * 1e3,
                       status="ok")
        except Exception as exc:  # noqa: BLE001
            row["status"] = f"error: {exc}"
        rows.append(row)
    return _header(cfg), rows


def _flag(value) -> str:
    if value is None:
        return ""
    return "1" if value else "0"


def _render(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)  # shortest round-trip decimal; inf -> 'inf'
    return str(value)


def render_csv(header: List[str], columns: List[str],
               rows: List[Dict[str, Any]]) -> str:
    buf = io.StringIO()
    for line in header:
        buf.write(line + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_render(row[c]) for c in columns])
    return buf.getvalue()


def write_csv(path: str, header: List[str], columns: List[str],
              rows: List[Dict[str, Any]]) -> None:
    text = render_csv(header, columns, rows)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# Figure-reproduction presets: every published parameter pinned, plus the
# z = 50 um convention.  Grids chosen to resolve the documented features.
_NIOBIUM_KEYS = {
    "material.Tc_K": 8.31,
    "material.lambdaL0_m": 35e-9,
    "material.sigma_n": 2e7,
    "material.debye_energy_eV": 25e-3,
    "material.impurity_strength": 13.61,
    "material.xi0_m": 39e-9,
    "material.mean_free_path_m": 9e-9,
    "material.ZN": 2.1,
    "geometry.z_m": 50e-6,
    "transition.nu_hz": 560e3,
    "transition.sx2": 0.0,
    "transition.sy2": 1.0 / 16.0,
    "transition.sz2": 1.0 / 16.0,
}

PRESETS: Dict[str, Dict[str, Any]] = {
    # lifetime vs temperature, two-fluid film of thickness 0.9 um
    "fig1": {**_NIOBIUM_KEYS,
             "material.model": "two_fluid_gc", "geometry.H_m": 0.9e-6,
             "sweep.axis": "temperature", "sweep.min": 0.831,
             "sweep.max": 11.634, "sweep.count": 60, "sweep.scale": "log",
             "output.path": "fig1.csv"},
    # normalized complex conductivity vs temperature, dirty limit
    "fig2": {**_NIOBIUM_KEYS,
             "material.model": "dirty_bcs",
             "sweep.axis": "temperature", "sweep.min": 0.4155,
             "sweep.max": 9.972, "sweep.count": 60, "sweep.scale": "linear",
             "output.path": "fig2.csv"},
    # lifetime vs temperature, dirty-limit bulk (half-space)
    "fig3": {**_NIOBIUM_KEYS,
             "material.model": "dirty_bcs", "geometry.H_m": math.inf,
             "sweep.axis": "temperature", "sweep.min": 0.831,
             "sweep.max": 11.634, "sweep.count": 60, "sweep.scale": "log",
             "output.path": "fig3.csv"},
    # lifetime vs film thickness at T = Tc/2, dirty limit
    "fig4": {**_NIOBIUM_KEYS,
             "material.model": "dirty_bcs", "material.T_K": 4.155,
             "sweep.axis": "thickness", "sweep.min": 10e-9,
             "sweep.max": 1e-3, "sweep.count": 60, "sweep.scale": "log",
             "output.path": "fig4.csv"},
}

PRESET_RUNNERS = {"fig1": run_scan, "fig2": run_conductivity_table,
                  "fig3": run_scan, "fig4": run_scan}

PRESET_COLUMNS = {"fig1": RATE_COLUMNS, "fig2": CONDUCTIVITY_COLUMNS,
                  "fig3": RATE_COLUMNS, "fig4": RATE_COLUMNS}


def preset_config(name: str, overrides=()) -> Dict[str, Any]:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset '{name}' (choose from {sorted(PRESETS)})")
    return make_config(PRESETS[name], overrides=overrides)

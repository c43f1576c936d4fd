"""Flat, typed key=value configuration with dotted section names.

Format: one ``key = value`` per line, ``#`` comments, blank lines ignored.
Unknown keys are hard errors: a silently ignored typo in a physics
parameter is the top failure mode for this kind of tool.  ``--override
key=value`` entries go through the same schema.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional, Tuple

from .constants import CODATA2018, PhysicalConstants, TransitionSpec
from .errors import ConfigError
from .materials import ComplexConductivity, DrudeMetalParams, SuperconductorParams
from .models import MODEL_TAGS, MaterialModel, build_model
from .quadrature import QuadratureSettings

__all__ = [
    "DEFAULTS",
    "parse_value",
    "read_config_file",
    "make_config",
    "config_lines",
    "config_hash",
    "build_transition",
    "build_settings",
    "build_material_model",
    "sweep_grid",
]


@dataclass(frozen=True)
class _Field:
    kind: str                      # float | pos_float | nonneg_float_or_inf | int | bool | str
    default: Any
    choices: Optional[Tuple[str, ...]] = None


_EV = CODATA2018.eV

SCHEMA: Dict[str, _Field] = {
    # transition
    "transition.nu_hz": _Field("pos_float", 560e3),
    "transition.sx2": _Field("float", 0.0),
    "transition.sy2": _Field("float", 1.0 / 16.0),
    "transition.sz2": _Field("float", 1.0 / 16.0),
    # geometry (z = 50 um is a convention, not a published number: see README)
    "geometry.z_m": _Field("pos_float", 50e-6),
    "geometry.H_m": _Field("nonneg_float_or_inf", math.inf),
    # material selection and parameters
    "material.model": _Field("str", "dirty_bcs", choices=MODEL_TAGS),
    "material.T_K": _Field("pos_float", 4.155),
    "material.eliashberg": _Field("bool", False),
    "material.Tc_K": _Field("pos_float", 8.31),
    "material.lambdaL0_m": _Field("pos_float", 35e-9),
    "material.sigma_n": _Field("pos_float", 2e7),
    "material.debye_energy_eV": _Field("pos_float", 25e-3),
    "material.impurity_strength": _Field("pos_float", 13.61),
    "material.xi0_m": _Field("pos_float", 39e-9),
    "material.mean_free_path_m": _Field("pos_float", 9e-9),
    "material.ZN": _Field("pos_float", 2.1),
    "material.theta_K": _Field("pos_float", 175.0),
    "material.plasma_energy_eV": _Field("pos_float", 9.0),
    "material.bg_prefactor_eV": _Field("pos_float", 0.0847),
    "material.sigma1": _Field("float", 0.0),
    "material.sigma2": _Field("float", 0.0),
    # sweep
    "sweep.axis": _Field("str", "temperature",
                         choices=("temperature", "thickness", "distance")),
    "sweep.min": _Field("float", 0.831),
    "sweep.max": _Field("float", 11.634),
    "sweep.count": _Field("int", 60),
    "sweep.scale": _Field("str", "log", choices=("linear", "log")),
    # compare
    "compare.formula": _Field("str", "auto",
                              choices=("auto", "superconductor", "normal")),
    # quadrature
    "quadrature.rel_tol": _Field("pos_float", 1e-8),
    "quadrature.abs_tol": _Field("float", 1e-300),
    "quadrature.max_subdivisions": _Field("int", 2000),
    "quadrature.tail_tol": _Field("pos_float", 1e-10),
    # output
    "output.path": _Field("str", "scan.csv"),
}

DEFAULTS: Dict[str, Any] = {key: f.default for key, f in SCHEMA.items()}


def parse_value(key: str, raw: str) -> Any:
    if key not in SCHEMA:
        raise ConfigError(f"unknown configuration key '{key}'")
    f = SCHEMA[key]
    raw = raw.strip()
    try:
        if f.kind == "str":
            value: Any = raw
        elif f.kind == "bool":
            if raw.lower() in ("true", "yes", "1"):
                value = True
            elif raw.lower() in ("false", "no", "0"):
                value = False
            else:
                raise ValueError("expected true/false")
        elif f.kind == "int":
            value = int(raw)
        elif f.kind == "nonneg_float_or_inf":
            value = math.inf if raw.lower() in ("inf", "infinity") else float(raw)
            if value < 0 or math.isnan(value):
                raise ValueError("must be >= 0 or inf")
        elif f.kind == "pos_float":
            value = float(raw)
            if not (math.isfinite(value) and value > 0):
                raise ValueError("must be positive and finite")
        else:  # plain float
            value = float(raw)
            if math.isnan(value):
                raise ValueError("must not be NaN")
    except ValueError as exc:
        raise ConfigError(f"bad value for '{key}': {raw!r} ({exc})") from None
    if f.choices is not None and value not in f.choices:
        raise ConfigError(f"'{key}' must be one of {f.choices}, got {value!r}")
    return value


def read_config_file(path: str) -> Dict[str, Any]:
    values: Dict[str, Any] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.split("#", 1)[0].strip()
            if not stripped:
                continue
            if "=" not in stripped:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, raw = stripped.split("=", 1)
            key = key.strip()
            values[key] = parse_value(key, raw)
    return values


def make_config(*sources: Optional[Dict[str, Any]],
                overrides: Iterable[str] = ()) -> Dict[str, Any]:
    """Merge defaults, dict sources (later wins) and key=value override strings."""
    cfg = dict(DEFAULTS)
    for src in sources:
        if not src:
            continue
        for key, value in src.items():
            if key not in SCHEMA:
                raise ConfigError(f"unknown configuration key '{key}'")
            cfg[key] = value
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override '{item}' is not of the form key=value")
        key, raw = item.split("=", 1)
        cfg[key.strip()] = parse_value(key.strip(), raw)
    _cross_validate(cfg)
    return cfg


def _cross_validate(cfg: Dict[str, Any]) -> None:
    if cfg["sweep.count"] < 2:
        raise ConfigError("sweep.count must be at least 2")
    if not cfg["sweep.min"] < cfg["sweep.max"]:
        raise ConfigError("sweep.min must be strictly less than sweep.max")
    if cfg["sweep.scale"] == "log" and cfg["sweep.min"] <= 0:
        raise ConfigError("log grids require sweep.min > 0")
    if cfg["sweep.axis"] == "thickness" and cfg["sweep.min"] < 0:
        raise ConfigError("thicknesses must be non-negative")
    if cfg["material.model"] == "fixed" and cfg["material.sigma1"] < 0:
        raise ConfigError("material.sigma1 must be non-negative")


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def config_lines(cfg: Dict[str, Any]) -> list[str]:
    return [f"{key} = {_fmt(cfg[key])}" for key in sorted(cfg)]


def config_hash(cfg: Dict[str, Any]) -> str:
    text = "\n".join(config_lines(cfg))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def build_transition(cfg: Dict[str, Any]) -> TransitionSpec:
    return TransitionSpec(nu=cfg["transition.nu_hz"], sx2=cfg["transition.sx2"],
                          sy2=cfg["transition.sy2"], sz2=cfg["transition.sz2"])


def build_settings(cfg: Dict[str, Any]) -> QuadratureSettings:
    return QuadratureSettings(rel_tol=cfg["quadrature.rel_tol"],
                              abs_tol=cfg["quadrature.abs_tol"],
                              max_subdivisions=cfg["quadrature.max_subdivisions"],
                              tail_tol=cfg["quadrature.tail_tol"])


def build_superconductor_params(cfg: Dict[str, Any]) -> SuperconductorParams:
    return SuperconductorParams(
        Tc=cfg["material.Tc_K"],
        lambdaL0=cfg["material.lambdaL0_m"],
        sigma_n=cfg["material.sigma_n"],
        debye_energy=cfg["material.debye_energy_eV"] * _EV,
        impurity_strength=cfg["material.impurity_strength"],
        xi0=cfg["material.xi0_m"],
        mean_free_path=cfg["material.mean_free_path_m"],
        ZN=cfg["material.ZN"],
    )


def build_material_model(cfg: Dict[str, Any], omega: float,
                         settings: QuadratureSettings,
                         constants: PhysicalConstants = CODATA2018) -> MaterialModel:
    tag = cfg["material.model"]
    sc = build_superconductor_params(cfg) if tag in (
        "two_fluid_gc", "ag_two_fluid", "mb_clean", "dirty_bcs") else None
    drude = None
    if tag == "drude_bg":
        drude = DrudeMetalParams(theta=cfg["material.theta_K"],
                                 plasma_energy=cfg["material.plasma_energy_eV"] * _EV,
                                 bg_prefactor=cfg["material.bg_prefactor_eV"] * _EV)
    fixed = None
    if tag == "fixed":
        fixed = ComplexConductivity(cfg["material.sigma1"], cfg["material.sigma2"])
    return build_model(tag, omega, sc_params=sc, drude_params=drude,
                       fixed_sigma=fixed, eliashberg=cfg["material.eliashberg"],
                       settings=settings, constants=constants)


def sweep_grid(cfg: Dict[str, Any]) -> list[float]:
    import numpy as np

    lo, hi, n = cfg["sweep.min"], cfg["sweep.max"], cfg["sweep.count"]
    if cfg["sweep.scale"] == "log":
        return [float(v) for v in np.geomspace(lo, hi, n)]
    return [float(v) for v in np.linspace(lo, hi, n)]

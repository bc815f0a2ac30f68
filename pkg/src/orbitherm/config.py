"""Configuration: defaults, YAML loading, validation, digesting.

A single nested key-value file drives every subcommand.  All defaults
are embedded here, so an empty (or missing) config runs the nominal
scenario out of the box.  Unknown or ill-typed keys are rejected with
the offending key path spelled out.
"""

import copy
import hashlib
import json

import yaml

from dataclasses import replace

from .coupling import extremal_preset, nominal_preset

PRESETS = ("nominal", "extremal-burgers", "extremal-andrade")

DEFAULTS = {
    "preset": "nominal",
    "scenario": {
        "duration_yr": 6.0e6,
        "dyn_step_yr": 17.0 / 300.0,
        "macro_step_yr": 100.0,
        "output_every": 50,
        "thermal_profile": None,       # preset default unless overridden
        "uniform_t_init_K": None,
        "grid_points": 200,
        "auto_place": True,
        "place_offset_km": None,
        "checkpoint_every": 0,
    },
    "rheology": {
        "t_melt_K": None,              # None keeps the preset value
        "burgers_eta_ratio": None,
        "andrade_alpha": None,
        "andrade_beta": None,
    },
    "map": {
        "model": "averaged",
        "grid_a": 100,
        "grid_m": 100,
        "a_lo_km": None,
        "a_hi_km": None,
        "span_yr": 1500.0,
        "step_yr": 17.0 / 300.0,
        "step_days": 1.0 / 80.0,
        "inclination_deg": 4.338,
        "scale": "linear",
    },
    "estimate": {
        "e_min": 0.0,
        "e_max": 0.5,
        "n_e": 51,
        "q_values": [5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0],
        "k2": None,                    # None: elastic k2 of the inner body
    },
    "rheology_curves": {
        "t_mean_K": 84.0,
        "t_melt_min_K": 150.0,
        "t_melt_max_K": 273.0,
        "n_points": 60,
    },
    "profile": {
        "grid_points": 200,
        "duration_gyr": 4.6,
    },
}


class ConfigError(ValueError):
    pass


def _merge(defaults, override, path=""):
    out = copy.deepcopy(defaults)
    for key, value in override.items():
        where = f"{path}.{key}" if path else key
        if key not in defaults:
            raise ConfigError(f"unknown config key: {where!r}")
        if isinstance(defaults[key], dict):
            if not isinstance(value, dict):
                raise ConfigError(f"config key {where!r} must be a mapping")
            out[key] = _merge(defaults[key], value, where)
        else:
            out[key] = value
    return out


def load_config(path=None, overrides=None):
    """Merged effective config; path and overrides are both optional."""
    user = {}
    if path is not None:
        with open(path) as f:
            try:
                user = yaml.safe_load(f) or {}
            except yaml.YAMLError as exc:
                raise ConfigError(f"cannot parse {path}: {exc}") from exc
        if not isinstance(user, dict):
            raise ConfigError(f"top level of {path} must be a mapping")
    cfg = _merge(DEFAULTS, user)
    if overrides:
        cfg = _merge(cfg, overrides)
    if cfg["preset"] not in PRESETS:
        raise ConfigError(
            f"unknown config key value: 'preset' must be one of {PRESETS}, "
            f"got {cfg['preset']!r}"
        )
    return cfg


def config_digest(cfg):
    """sha256 over the canonical JSON dump of the effective config."""
    return hashlib.sha256(
        json.dumps(cfg, sort_keys=True, default=repr).encode()
    ).hexdigest()


def build_scenario(cfg):
    """ScenarioConfig for the selected preset with config overrides applied."""
    preset = cfg["preset"]
    sc = cfg["scenario"]
    common = dict(
        duration=float(sc["duration_yr"]),
        dyn_step=float(sc["dyn_step_yr"]),
        macro_step=float(sc["macro_step_yr"]),
        output_every=int(sc["output_every"]),
        n_grid_points=int(sc["grid_points"]),
        auto_place=bool(sc["auto_place"]),
        place_offset_km=sc["place_offset_km"],
    )
    if preset == "nominal":
        scenario = nominal_preset(**common)
    else:
        model = preset.split("-", 1)[1]
        scenario = extremal_preset(model, **common)
    if sc["thermal_profile"] is not None:
        scenario = replace(scenario, thermal_profile=sc["thermal_profile"])
    if sc["uniform_t_init_K"] is not None:
        scenario = replace(scenario, uniform_t_init=float(sc["uniform_t_init_K"]))

    rh = cfg["rheology"]
    updates = {}
    if rh["t_melt_K"] is not None:
        updates["t_melt"] = float(rh["t_melt_K"])
    if rh["burgers_eta_ratio"] is not None:
        updates["burgers_eta_ratio"] = float(rh["burgers_eta_ratio"])
    if rh["andrade_alpha"] is not None:
        updates["andrade_alpha"] = float(rh["andrade_alpha"])
    if rh["andrade_beta"] is not None:
        updates["andrade_beta"] = float(rh["andrade_beta"])
    if updates:
        scenario = replace(
            scenario,
            inner=replace(scenario.inner,
                          rheology=replace(scenario.inner.rheology, **updates)),
            outer=replace(scenario.outer,
                          rheology=replace(scenario.outer.rheology, **updates)),
        )
    return scenario

"""Run configuration: a single YAML file naming the design space, device
fixtures, merit targets, algorithm, and optional experiment sweeps.

All physical quantities are SI base units (ohm, farad, volt, hertz, kelvin,
W/m^2, dB for ratios). Unknown keys anywhere in the file are rejected, so a
typo fails loudly instead of silently falling back to a default.
"""

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
import yaml

from .devices import (OpAmpParams, OperatingConditions, PhotodiodeParams,
                      load_opamp, load_photodiode)
from .eseries import ESeriesSpec, e_series_values
from .merit import (LOWER_BOUNDED, BilateralSpec, MeritSpec, UnilateralSpec)
from .space import DesignSpace, discretize_bias


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


def _require_mapping(obj, path: str) -> dict:
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected a mapping")
    return obj

def _check_keys(d: dict, required, optional, path: str):
    required = set(required)
    optional = set(optional)
    keys = set(d)
    missing = required - keys
    if missing:
        raise ConfigError(f"{path}: missing keys {sorted(missing)}")
    unknown = keys - required - optional
    if unknown:
        raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")


def _axis_values(section: dict, path: str) -> np.ndarray:
    """An axis is either an explicit value list or an E-series range."""
    _require_mapping(section, path)
    if "values" in section:
        _check_keys(section, ["values"], [], path)
        return np.asarray(section["values"], dtype=float)
    _check_keys(section, ["series", "decade_min", "decade_max"], [], path)
    spec = ESeriesSpec(series_id=str(section["series"]),
                       decade_min=int(section["decade_min"]),
                       decade_max=int(section["decade_max"]))
    return e_series_values(spec)


def _bias_values(section: dict, path: str) -> np.ndarray:
    _require_mapping(section, path)
    if "values" in section:
        _check_keys(section, ["values"], [], path)
        return np.asarray(section["values"], dtype=float)
    _check_keys(section, ["v_min", "v_max", "count"], [], path)
    return discretize_bias(float(section["v_min"]), float(section["v_max"]),
                           int(section["count"]))


def _parse_merit(section: dict) -> MeritSpec:
    _require_mapping(section, "merit")
    _check_keys(section, ["snr", "bandwidth", "phase_margin"], [], "merit")
    snr = _require_mapping(section["snr"], "merit.snr")
    _check_keys(snr, ["min", "opt"], [], "merit.snr")
    band = _require_mapping(section["bandwidth"], "merit.bandwidth")
    _check_keys(band, ["min", "opt", "max"], [], "merit.bandwidth")
    phase = _require_mapping(section["phase_margin"], "merit.phase_margin")
    _check_keys(phase, ["min", "opt"], [], "merit.phase_margin")
    return MeritSpec(
        snr=UnilateralSpec(float(snr["min"]), float(snr["opt"]),
                           direction=LOWER_BOUNDED),
        bandwidth=BilateralSpec(float(band["min"]), float(band["opt"]),
                                float(band["max"])),
        phase_margin=UnilateralSpec(float(phase["min"]), float(phase["opt"]),
                                    direction=LOWER_BOUNDED))


_ALGO_KEYS = {
    "systematic": ([], []),
    "montecarlo": (["n_mc"], ["seed"]),
    "ga": (["n_c", "generations", "mutation_percent"],
           ["seed", "selection_floor", "init_attempt_cap"]),
}


def _parse_algorithm(section: dict, path: str, allow_seed: bool = True) -> dict:
    _require_mapping(section, path)
    if "name" not in section:
        raise ConfigError(f"{path}: missing keys ['name']")
    name = str(section["name"])
    if name not in _ALGO_KEYS:
        raise ConfigError(f"{path}.name: unknown algorithm {name!r} "
                          f"(expected one of {sorted(_ALGO_KEYS)})")
    required, optional = _ALGO_KEYS[name]
    if not allow_seed:
        optional = [k for k in optional if k != "seed"]
    _check_keys(section, ["name"] + required, optional, path)
    return {k: (str(v) if k == "name" else v) for k, v in section.items()}


def _parse_experiment(section: dict) -> dict:
    _require_mapping(section, "experiment")
    _check_keys(section, ["n_runs", "base_seed", "sweeps"], [], "experiment")
    n_runs = int(section["n_runs"])
    if n_runs < 1:
        raise ConfigError("experiment.n_runs: must be >= 1")
    sweeps = section["sweeps"]
    if not isinstance(sweeps, list) or not sweeps:
        raise ConfigError("experiment.sweeps: expected a non-empty list")
    parsed = []
    for i, entry in enumerate(sweeps):
        path = f"experiment.sweeps[{i}]"
        # per-run seeds derive from base_seed, so sweep entries take none
        algo = _parse_algorithm(entry, path, allow_seed=False)
        if algo["name"] == "systematic":
            raise ConfigError(f"{path}: sweeps take stochastic algorithms "
                              "(montecarlo or ga)")
        parsed.append(algo)
    return {"n_runs": n_runs, "base_seed": int(section["base_seed"]),
            "sweeps": parsed}


def _parse_output(section: dict) -> dict:
    _require_mapping(section, "output")
    _check_keys(section, [], ["write_grid", "projections",
                              "near_optimal_cloud"], "output")
    return {"write_grid": bool(section.get("write_grid", False)),
            "projections": bool(section.get("projections", True)),
            "near_optimal_cloud": bool(section.get("near_optimal_cloud", True))}


def _parse_calibration(section: dict) -> dict:
    _require_mapping(section, "calibration")
    _check_keys(section, ["rf", "cf", "vd"],
                ["target_snr_db", "target_bandwidth_hz",
                 "target_phase_margin_deg", "target_merit"], "calibration")
    return {k: float(v) for k, v in section.items()}


@dataclass
class RunConfig:
    space: DesignSpace
    photodiode: PhotodiodeParams
    opamp: OpAmpParams
    conditions: OperatingConditions
    merit_spec: MeritSpec
    algorithm: Optional[dict]
    experiment: Optional[dict]
    output: dict
    calibration: Optional[dict]
    landscape_hash: str
    config_path: Path

    def build_evaluator(self):
        from .circuit import CircuitEvaluator
        return CircuitEvaluator(self.photodiode, self.opamp, self.conditions)

    def build_landscape(self):
        from .landscape import CircuitLandscape
        return CircuitLandscape(self.space, self.build_evaluator(),
                                self.merit_spec)


def _landscape_hash(raw: dict, pd_bytes: bytes, oa_bytes: bytes) -> str:
    """Hash of everything that determines the merit landscape: the space,
    merit, and conditions sections plus the fixture file contents. Algorithm
    and experiment settings deliberately do not participate, so editing them
    keeps a cached systematic reference valid."""
    landscape_part = {
        "design_space": raw["design_space"],
        "merit": raw["merit"],
        "conditions": raw["fixtures"].get("conditions"),
    }
    digest = hashlib.sha256()
    digest.update(json.dumps(landscape_part, sort_keys=True,
                             separators=(",", ":")).encode())
    digest.update(b"\x00photodiode\x00")
    digest.update(pd_bytes)
    digest.update(b"\x00opamp\x00")
    digest.update(oa_bytes)
    return digest.hexdigest()


def load_run_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as err:
        raise ConfigError(f"cannot read config file {path}: {err}") from err
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as err:
        raise ConfigError(f"{path}: invalid YAML: {err}") from err
    raw = _require_mapping(raw, str(path))
    _check_keys(raw, ["design_space", "fixtures", "merit"],
                ["algorithm", "experiment", "output", "calibration"],
                "top level")

    ds = _require_mapping(raw["design_space"], "design_space")
    _check_keys(ds, ["rf", "cf", "bias"], [], "design_space")
    try:
        space = DesignSpace(rf_values=_axis_values(ds["rf"], "design_space.rf"),
                            cf_values=_axis_values(ds["cf"], "design_space.cf"),
                            vd_values=_bias_values(ds["bias"],
                                                   "design_space.bias"))
    except ValueError as err:
        raise ConfigError(f"design_space: {err}") from err

    fx = _require_mapping(raw["fixtures"], "fixtures")
    _check_keys(fx, ["photodiode", "opamp", "conditions"], [], "fixtures")
    cond_raw = _require_mapping(fx["conditions"], "fixtures.conditions")
    _check_keys(cond_raw, ["min_irradiance", "temperature"],
                ["noise_integration_decades"], "fixtures.conditions")
    decades = cond_raw.get("noise_integration_decades")

    pd_path = (path.parent / str(fx["photodiode"])).resolve()
    oa_path = (path.parent / str(fx["opamp"])).resolve()
    try:
        pd_bytes = pd_path.read_bytes()
        oa_bytes = oa_path.read_bytes()
        photodiode = load_photodiode(pd_path)
        opamp = load_opamp(oa_path)
    except OSError as err:
        raise ConfigError(f"cannot read fixture file: {err}") from err
    except ValueError as err:
        raise ConfigError(f"invalid fixture: {err}") from err

    try:
        conditions = OperatingConditions(
            min_irradiance=float(cond_raw["min_irradiance"]),
            temperature=float(cond_raw["temperature"]),
            noise_integration_decades=(float(decades) if decades is not None
                                       else None))
        merit_spec = _parse_merit(raw["merit"])
    except ValueError as err:
        raise ConfigError(str(err)) from err

    algorithm = (_parse_algorithm(raw["algorithm"], "algorithm")
                 if "algorithm" in raw else None)
    experiment = (_parse_experiment(raw["experiment"])
                  if "experiment" in raw else None)
    output = _parse_output(raw.get("output", {}))
    calibration = (_parse_calibration(raw["calibration"])
                   if "calibration" in raw else None)

    return RunConfig(space=space, photodiode=photodiode, opamp=opamp,
                     conditions=conditions, merit_spec=merit_spec,
                     algorithm=algorithm, experiment=experiment,
                     output=output, calibration=calibration,
                     landscape_hash=_landscape_hash(raw, pd_bytes, oa_bytes),
                     config_path=path)

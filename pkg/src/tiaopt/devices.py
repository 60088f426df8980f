"""Device parameter sets (photodiode, op amp, operating conditions).

Parameters live in small YAML fixture files, SI base units throughout.
The software treats the files as opaque data; see fixtures/ for the shipped
datasheet digitizations and their provenance notes.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import yaml

from .validation import check_scalar


@dataclass(frozen=True)
class PhotodiodeParams:
    responsivity: float      # A/W at the design wavelength
    active_area: float       # m^2
    dark_current: float      # A at reference bias
    cv_curve: tuple          # ((volt, farad), ...) reverse bias vs junction C
    v_reverse_max: float     # volt

    def __post_init__(self):
        check_scalar(self.responsivity, "responsivity", minimum=0, include_min=False)
        check_scalar(self.active_area, "active_area", minimum=0, include_min=False)
        check_scalar(self.dark_current, "dark_current", minimum=0)
        check_scalar(self.v_reverse_max, "v_reverse_max", minimum=0, include_min=False)
        curve = tuple((float(v), float(c)) for v, c in self.cv_curve)
        if len(curve) < 2:
            raise ValueError("cv_curve needs at least 2 points")
        volts = np.array([p[0] for p in curve])
        caps = np.array([p[1] for p in curve])
        if not np.all(np.diff(volts) > 0):
            raise ValueError("cv_curve voltages must be strictly increasing")
        if not np.all(np.diff(caps) < 0):
            raise ValueError("cv_curve capacitances must be strictly decreasing")
        if not np.all(caps > 0):
            raise ValueError("cv_curve capacitances must be positive")
        if volts[0] < 0:
            raise ValueError("cv_curve voltages must be non-negative")
        object.__setattr__(self, "cv_curve", curve)


@dataclass(frozen=True)
class OpAmpParams:
    dc_gain: float                # dimensionless A0
    gbw: float                    # Hz
    voltage_noise_density: float  # V/sqrt(Hz)
    current_noise_density: float  # A/sqrt(Hz)
    input_capacitance: float      # F, common-mode + differential lumped

    def __post_init__(self):
        for name in ("dc_gain", "gbw", "voltage_noise_density",
                     "current_noise_density", "input_capacitance"):
            check_scalar(getattr(self, name), name, minimum=0, include_min=False)
        if self.gbw >= self.dc_gain * 1e12:
            raise ValueError("gbw implausibly large versus dc gain")


@dataclass(frozen=True)
class OperatingConditions:
    min_irradiance: float    # W/m^2, the specification's minimum input
    temperature: float       # K
    noise_integration_decades: Optional[float] = None  # None -> model default

    def __post_init__(self):
        check_scalar(self.min_irradiance, "min_irradiance", minimum=0, include_min=False)
        check_scalar(self.temperature, "temperature", minimum=0, include_min=False)
        if self.noise_integration_decades is not None:
            check_scalar(self.noise_integration_decades,
                         "noise_integration_decades", minimum=0, include_min=False)


def diode_capacitance(pd: PhotodiodeParams, vd):
    """Junction capacitance at reverse bias vd, by log-log interpolation.

    The voltage axis is offset by +1 V before taking logs so vd = 0 is
    representable; outside the curve's span the endpoint value holds.
    Accepts scalars or arrays.
    """
    vd = np.asarray(vd, dtype=float)
    if np.any(vd < 0) or np.any(vd > pd.v_reverse_max):
        raise ValueError(
            f"bias outside [0, {pd.v_reverse_max}] V domain")
    volts = np.array([p[0] for p in pd.cv_curve])
    caps = np.array([p[1] for p in pd.cv_curve])
    # np.interp clamps outside the knot span, which is the contract here
    logc = np.interp(np.log10(vd + 1.0), np.log10(volts + 1.0), np.log10(caps))
    out = 10.0 ** logc
    return float(out) if out.ndim == 0 else out


def _require_keys(data: dict, required, optional, path):
    missing = [k for k in required if k not in data]
    if missing:
        raise ValueError(f"{path}: missing required keys {missing}")
    unknown = [k for k in data if k not in required and k not in optional]
    if unknown:
        raise ValueError(f"{path}: unknown keys {unknown}")


def load_photodiode(path) -> PhotodiodeParams:
    with open(path) as fh:
        data = yaml.safe_load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a mapping at top level")
    _require_keys(data,
                  required=["responsivity", "active_area", "dark_current",
                            "cv_curve", "v_reverse_max"],
                  optional=["name", "provenance"], path=path)
    curve = data["cv_curve"]
    if not isinstance(curve, list) or not all(
            isinstance(row, list) and len(row) == 2 for row in curve):
        raise ValueError(f"{path}: cv_curve must be a list of [volts, farads] pairs")
    return PhotodiodeParams(
        responsivity=float(data["responsivity"]),
        active_area=float(data["active_area"]),
        dark_current=float(data["dark_current"]),
        cv_curve=tuple((float(v), float(c)) for v, c in curve),
        v_reverse_max=float(data["v_reverse_max"]),
    )


def load_opamp(path) -> OpAmpParams:
    with open(path) as fh:
        data = yaml.safe_load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a mapping at top level")
    _require_keys(data,
                  required=["dc_gain", "gbw", "voltage_noise_density",
                            "current_noise_density", "input_capacitance"],
                  optional=["name", "provenance"], path=path)
    return OpAmpParams(
        dc_gain=float(data["dc_gain"]),
        gbw=float(data["gbw"]),
        voltage_noise_density=float(data["voltage_noise_density"]),
        current_noise_density=float(data["current_noise_density"]),
        input_capacitance=float(data["input_capacitance"]),
    )

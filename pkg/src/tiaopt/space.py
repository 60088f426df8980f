"""Discrete design space: component value axes and bias voltage axis."""

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .validation import check_rng


@dataclass(frozen=True)
class DesignPoint:
    """One candidate circuit: feedback resistor, feedback capacitor, bias."""

    rf: float  # ohm
    cf: float  # farad
    vd: float  # volt, reverse bias

    def __post_init__(self):
        if not (self.rf > 0 and self.cf > 0 and self.vd >= 0):
            raise ValueError(f"invalid design point ({self.rf}, {self.cf}, {self.vd})")


@dataclass(frozen=True)
class DesignSpace:
    """Cartesian grid of allowed (rf, cf, vd) values.

    Axes are stored as float arrays, strictly increasing.
    """

    rf_values: np.ndarray
    cf_values: np.ndarray
    vd_values: np.ndarray

    def __post_init__(self):
        for name in ("rf_values", "cf_values", "vd_values"):
            axis = np.asarray(getattr(self, name), dtype=float)
            if axis.ndim != 1 or axis.size == 0:
                raise ValueError(f"{name} must be a non-empty 1-d sequence")
            if not np.all(np.diff(axis) > 0):
                raise ValueError(f"{name} must be strictly increasing")
            object.__setattr__(self, name, axis)

    @property
    def shape(self) -> tuple:
        return (self.rf_values.size, self.cf_values.size, self.vd_values.size)

    def cardinality(self) -> int:
        nr, nc, nv = self.shape
        return nr * nc * nv

    def point_at(self, i: int, j: int, k: int) -> DesignPoint:
        return DesignPoint(self.rf_values[i], self.cf_values[j], self.vd_values[k])

    def index_of(self, point: DesignPoint) -> tuple:
        i = int(np.searchsorted(self.rf_values, point.rf))
        j = int(np.searchsorted(self.cf_values, point.cf))
        k = int(np.searchsorted(self.vd_values, point.vd))
        ok = (i < self.rf_values.size and self.rf_values[i] == point.rf
              and j < self.cf_values.size and self.cf_values[j] == point.cf
              and k < self.vd_values.size and self.vd_values[k] == point.vd)
        if not ok:
            raise ValueError("point is not on the grid")
        return i, j, k


def discretize_bias(v_min: float, v_max: float, n: int):
    """n linearly spaced bias values from v_min to v_max inclusive."""
    if v_max <= v_min or v_min < 0:
        raise ValueError(f"bad bias range [{v_min}, {v_max}]")
    if n < 2:
        raise ValueError("need at least 2 bias values")
    return np.linspace(v_min, v_max, n)


def cardinality(space: DesignSpace) -> int:
    return space.cardinality()


def enumerate_points(space: DesignSpace) -> Iterator[DesignPoint]:
    """Lexicographic stream: rf outermost, vd innermost. Deterministic."""
    for rf in space.rf_values:
        for cf in space.cf_values:
            for vd in space.vd_values:
                yield DesignPoint(rf, cf, vd)


def sample_uniform_indices(space: DesignSpace, rng, n: int) -> np.ndarray:
    """n uniform index triples as an (n, 3) array; with replacement."""
    check_rng(rng)
    nr, nc, nv = space.shape
    return rng.integers([nr, nc, nv], size=(n, 3))


def sample_uniform(space: DesignSpace, rng) -> DesignPoint:
    """One uniform draw; delegates to the vectorized sampler so scalar and
    batch callers consume the rng stream the same way."""
    i, j, k = sample_uniform_indices(space, rng, 1)[0]
    return space.point_at(int(i), int(j), int(k))

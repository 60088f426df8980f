"""IEC 60063 preferred-number series for commercial component values.

A series id (E6..E96) names a fixed mantissa table; full value lists are
built as mantissa * 10**decade over a half-open decade range.
"""

from dataclasses import dataclass

import numpy as np

# IEC 60063 mantissa tables. E6/E12/E24 are the rounded historic values,
# E48/E96 carry three significant digits.
E_SERIES_MANTISSAS = {
    "E6": [1.0, 1.5, 2.2, 3.3, 4.7, 6.8],
    "E12": [1.0, 1.2, 1.5, 1.8, 2.2, 2.7, 3.3, 3.9, 4.7, 5.6, 6.8, 8.2],
    "E24": [1.0, 1.1, 1.2, 1.3, 1.5, 1.6, 1.8, 2.0, 2.2, 2.4, 2.7, 3.0,
            3.3, 3.6, 3.9, 4.3, 4.7, 5.1, 5.6, 6.2, 6.8, 7.5, 8.2, 9.1],
    "E48": [1.00, 1.05, 1.10, 1.15, 1.21, 1.27, 1.33, 1.40, 1.47, 1.54,
            1.62, 1.69, 1.78, 1.87, 1.96, 2.05, 2.15, 2.26, 2.37, 2.49,
            2.61, 2.74, 2.87, 3.01, 3.16, 3.32, 3.48, 3.65, 3.83, 4.02,
            4.22, 4.42, 4.64, 4.87, 5.11, 5.36, 5.62, 5.90, 6.19, 6.49,
            6.81, 7.15, 7.50, 7.87, 8.25, 8.66, 9.09, 9.53],
    "E96": [1.00, 1.02, 1.05, 1.07, 1.10, 1.13, 1.15, 1.18, 1.21, 1.24,
            1.27, 1.30, 1.33, 1.37, 1.40, 1.43, 1.47, 1.50, 1.54, 1.58,
            1.62, 1.65, 1.69, 1.74, 1.78, 1.82, 1.87, 1.91, 1.96, 2.00,
            2.05, 2.10, 2.15, 2.21, 2.26, 2.32, 2.37, 2.43, 2.49, 2.55,
            2.61, 2.67, 2.74, 2.80, 2.87, 2.94, 3.01, 3.09, 3.16, 3.24,
            3.32, 3.40, 3.48, 3.57, 3.65, 3.74, 3.83, 3.92, 4.02, 4.12,
            4.22, 4.32, 4.42, 4.53, 4.64, 4.75, 4.87, 4.99, 5.11, 5.23,
            5.36, 5.49, 5.62, 5.76, 5.90, 6.04, 6.19, 6.34, 6.49, 6.65,
            6.81, 6.98, 7.15, 7.32, 7.50, 7.68, 7.87, 8.06, 8.25, 8.45,
            8.66, 8.87, 9.09, 9.31, 9.53, 9.76],
}


def points_per_decade(series_id: str) -> int:
    if series_id not in E_SERIES_MANTISSAS:
        raise ValueError(f"unknown series id {series_id!r}, expected one of "
                         f"{sorted(E_SERIES_MANTISSAS)}")
    return len(E_SERIES_MANTISSAS[series_id])


@dataclass(frozen=True)
class ESeriesSpec:
    """A series id plus a half-open decade range [decade_min, decade_max)."""

    series_id: str
    decade_min: int
    decade_max: int

    def __post_init__(self):
        points_per_decade(self.series_id)  # validates the id
        if self.decade_min >= self.decade_max:
            raise ValueError(
                f"decade range empty: [{self.decade_min}, {self.decade_max})")

    @property
    def count(self) -> int:
        return points_per_decade(self.series_id) * (self.decade_max - self.decade_min)


def e_series_values(spec: ESeriesSpec) -> np.ndarray:
    """All series values over the decade range, sorted ascending.

    Each value is mantissa * 10**decade; E24 over [0, 3) gives 72 values.
    """
    mantissas = np.asarray(E_SERIES_MANTISSAS[spec.series_id])
    decades = np.arange(spec.decade_min, spec.decade_max)
    # outer product keeps exact float reproducibility: one multiply per value
    values = (mantissas[None, :] * (10.0 ** decades.astype(float))[:, None]).ravel()
    return values

"""Merit functions: per-variable compliance in [0, 1] and their product.

A unilateral merit ramps quadratically from 0 at x_min to 1 at x_opt and
stays 1 past the optimum (mirrored for upper-bounded variables). A bilateral
merit is the two-sided version, 1 only at x_opt and 0 outside (x_min, x_max).
Non-finite inputs (model failures) map to merit 0.
"""

from dataclasses import dataclass

import numpy as np

from .validation import check_scalar

LOWER_BOUNDED = "lower"
UPPER_BOUNDED = "upper"


@dataclass(frozen=True)
class UnilateralSpec:
    x_min: float
    x_opt: float
    direction: str = LOWER_BOUNDED

    def __post_init__(self):
        check_scalar(self.x_min, "x_min")
        check_scalar(self.x_opt, "x_opt")
        if self.direction not in (LOWER_BOUNDED, UPPER_BOUNDED):
            raise ValueError(f"direction must be {LOWER_BOUNDED!r} or "
                             f"{UPPER_BOUNDED!r}, got {self.direction!r}")
        if self.x_min == self.x_opt:
            raise ValueError("x_min and x_opt must differ")
        if self.direction == LOWER_BOUNDED and not self.x_min < self.x_opt:
            raise ValueError("lower-bounded spec needs x_min < x_opt")
        if self.direction == UPPER_BOUNDED and not self.x_min > self.x_opt:
            raise ValueError("upper-bounded spec needs x_min > x_opt")


@dataclass(frozen=True)
class BilateralSpec:
    x_min: float
    x_opt: float
    x_max: float

    def __post_init__(self):
        check_scalar(self.x_min, "x_min")
        check_scalar(self.x_opt, "x_opt")
        check_scalar(self.x_max, "x_max")
        if not (self.x_min < self.x_opt < self.x_max):
            raise ValueError("bilateral spec needs x_min < x_opt < x_max")


@dataclass(frozen=True)
class MeritSpec:
    """Bounds and optima for the three performance variables."""

    snr: UnilateralSpec          # dB
    bandwidth: BilateralSpec     # Hz
    phase_margin: UnilateralSpec  # degrees


@dataclass(frozen=True)
class MeritBreakdown:
    m_snr: float
    m_bandwidth: float
    m_phase: float
    global_merit: float

    def __post_init__(self):
        for v in (self.m_snr, self.m_bandwidth, self.m_phase, self.global_merit):
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"merit out of [0,1]: {v}")


def merit_unilateral(x, spec: UnilateralSpec):
    """Quadratic one-sided merit. Accepts scalars or arrays.

    Lower-bounded: 0 for x <= x_min, 1 for x >= x_opt,
    1 - ((x - x_opt)/(x_min - x_opt))**2 between.
    """
    x = np.asarray(x, dtype=float)
    t = (x - spec.x_opt) / (spec.x_min - spec.x_opt)
    # t is a normalized distance from the optimum toward the bound; the
    # same expression covers both directions because the sign cancels.
    # Clipped before squaring so out-of-range inputs cannot overflow.
    tc = np.clip(t, 0.0, 1.0)
    ramp = 1.0 - tc * tc
    out = np.where(t <= 0.0, 1.0, np.where(t >= 1.0, 0.0, ramp))
    out = np.where(np.isfinite(x), out, 0.0)
    return float(out) if out.ndim == 0 else out


def merit_bilateral(x, spec: BilateralSpec):
    """Quadratic two-sided merit, 0 outside (x_min, x_max), 1 at x_opt."""
    x = np.asarray(x, dtype=float)
    t_low = (x - spec.x_opt) / (spec.x_min - spec.x_opt)
    t_high = (x - spec.x_opt) / (spec.x_max - spec.x_opt)
    t = np.where(x < spec.x_opt, t_low, t_high)
    tc = np.clip(t, 0.0, 1.0)
    out = np.where(t >= 1.0, 0.0, 1.0 - tc * tc)
    out = np.where(np.isfinite(x), out, 0.0)
    return float(out) if out.ndim == 0 else out


def global_merit(performance, spec: MeritSpec) -> MeritBreakdown:
    """Per-variable merits and their product for one evaluated point."""
    m_s = merit_unilateral(performance.snr_db, spec.snr)
    m_b = merit_bilateral(performance.bandwidth_hz, spec.bandwidth)
    m_p = merit_unilateral(performance.phase_margin_deg, spec.phase_margin)
    return MeritBreakdown(m_s, m_b, m_p, m_s * m_b * m_p)


def global_merit_arrays(snr_db, bandwidth_hz, phase_margin_deg, spec: MeritSpec):
    """Vectorized global merit over parallel arrays.

    Returns (m_snr, m_bandwidth, m_phase, global) with the global product
    computed by the same multiplication as the scalar path.
    """
    m_s = merit_unilateral(snr_db, spec.snr)
    m_b = merit_bilateral(bandwidth_hz, spec.bandwidth)
    m_p = merit_unilateral(phase_margin_deg, spec.phase_margin)
    return m_s, m_b, m_p, m_s * m_b * m_p

"""Transimpedance amplifier performance model.

Single-pole op amp with capacitive-source feedback network:

    A(f)   = A0 / (1 + j f A0 / gbw)                 open-loop gain
    Z_f(f) = Rf / (1 + j w Rf Cf)                    feedback impedance
    Z_in   = 1 / (j w C_in),  C_in = C_D(V_D) + C_opamp
    beta   = Z_in / (Z_in + Z_f) = (1 + j x) / (1 + j y)
    T      = A beta                                  loop gain

with w = 2 pi f, x = w Rf Cf, y = w Rf (Cf + C_in). Writing
D = 1 + j y + A (1 + j x), the quantities used below collapse to

    Z_T     = Z_f T / (1 + T) = Rf A / D             closed-loop transimpedance
    NG * H  = A (1 + j y) / D                        voltage-noise gain to output

Output noise density combines op-amp voltage noise, op-amp current noise,
photocurrent and dark-current shot noise, and Rf thermal noise:

    S_out = |A|^2 ( e_n^2 (1 + y^2) + i_tot^2 Rf^2 ) / |D|^2
    i_tot^2 = i_n^2 + 2 q (I_ph + I_dark) + 4 k T / Rf

Bandwidth is the lowest f with |Z_T| = Rf / sqrt(2) (equivalently
|D|^2 = 2 |A|^2), phase margin is 180 deg + arg T at the unity-|T| crossing,
and S/N integrates S_out by the trapezoid rule on a log frequency grid.

All array code is elementwise or row-local, so batched evaluation is
bit-identical to single-point evaluation regardless of chunking.
"""

from dataclasses import dataclass

import numpy as np
from scipy.constants import Boltzmann, elementary_charge

from .devices import OpAmpParams, OperatingConditions, PhotodiodeParams, diode_capacitance
from .merit import global_merit_arrays
from .space import DesignPoint

SEARCH_POINTS_PER_DECADE = 50
NOISE_POINTS_PER_DECADE = 100
NOISE_FREQ_CAP_HZ = 1e9
BISECTION_ITERATIONS = 24  # 50/decade bracket -> ratio < 1 + 3e-9, below the 1e-6 tolerance


@dataclass(frozen=True)
class PerformanceVariables:
    snr_db: float
    bandwidth_hz: float      # NaN flags a model error (no -3 dB crossing found)
    phase_margin_deg: float

    @property
    def model_error(self) -> bool:
        return not np.isfinite(self.bandwidth_hz)


class CircuitEvaluator:
    """Pure, reentrant performance evaluator for one fixture set."""

    def __init__(self, pd: PhotodiodeParams, oa: OpAmpParams,
                 cond: OperatingConditions):
        if oa.gbw < 10.0:
            raise ValueError("gbw below 10 Hz: the 1 Hz search floor would "
                             "not bracket the loop crossover")
        self.pd = pd
        self.oa = oa
        self.cond = cond

        f_hi = 10.0 * oa.gbw
        n_search = int(np.ceil(SEARCH_POINTS_PER_DECADE * np.log10(f_hi))) + 1
        self._f_search = np.logspace(0.0, np.log10(f_hi), n_search)

        if cond.noise_integration_decades is not None:
            decades = float(cond.noise_integration_decades)
        else:
            decades = np.log10(min(10.0 * oa.gbw, NOISE_FREQ_CAP_HZ))
        n_noise = int(np.ceil(NOISE_POINTS_PER_DECADE * decades)) + 1
        self._f_noise = np.logspace(0.0, decades, n_noise)

        self._a_search = self._open_loop_gain(self._f_search)
        self._a_noise = self._open_loop_gain(self._f_noise)
        self._abs2_a_search = np.abs(self._a_search) ** 2

    # -- elementary frequency responses ------------------------------------

    def _open_loop_gain(self, f):
        return self.oa.dc_gain / (1.0 + 1j * f * (self.oa.dc_gain / self.oa.gbw))

    def input_capacitance(self, vd):
        return diode_capacitance(self.pd, vd) + self.oa.input_capacitance

    def loop_gain(self, point: DesignPoint, f):
        """T(f) = A(f) * Z_in / (Z_in + Z_f), from the literal impedances."""
        f = np.asarray(f, dtype=float)
        if np.any(f <= 0):
            raise ValueError("frequency must be positive")
        w = 2.0 * np.pi * f
        cin = self.input_capacitance(point.vd)
        z_f = point.rf / (1.0 + 1j * w * point.rf * point.cf)
        z_in = 1.0 / (1j * w * cin)
        t = self._open_loop_gain(f) * z_in / (z_in + z_f)
        return complex(t) if t.ndim == 0 else t

    # -- batched core -------------------------------------------------------

    def performance_batch(self, rf, cf, vd):
        """(snr_db, bandwidth_hz, phase_margin_deg) arrays for parallel
        rf/cf/vd arrays. Row-local arithmetic only."""
        rf = np.asarray(rf, dtype=float)
        cf = np.asarray(cf, dtype=float)
        vd = np.asarray(vd, dtype=float)
        n = rf.size
        rows = np.arange(n)

        cin = self.input_capacitance(vd)
        tau_f = rf * cf                # Rf Cf
        tau_t = rf * (cf + cin)        # Rf (Cf + C_in)

        # bracket the -3 dB point: |D|^2 > 2 |A|^2 marks |Z_T| below Rf/sqrt(2)
        x = tau_f[:, None] * (2.0 * np.pi * self._f_search)[None, :]
        y = tau_t[:, None] * (2.0 * np.pi * self._f_search)[None, :]
        d = 1.0 + 1j * y + self._a_search * (1.0 + 1j * x)
        abs2_d = d.real * d.real + d.imag * d.imag
        below_bw = abs2_d > 2.0 * self._abs2_a_search
        bw_idx = np.argmax(below_bw, axis=1)
        bw_ok = below_bw[rows, bw_idx] & (bw_idx > 0)

        # bracket the unity-|T| crossing: |T|^2 = |A|^2 (1+x^2)/(1+y^2)
        abs2_t = self._abs2_a_search * (1.0 + x * x) / (1.0 + y * y)
        below_t = abs2_t < 1.0
        pm_idx = np.argmax(below_t, axis=1)
        pm_ok = below_t[rows, pm_idx] & (pm_idx > 0)
        del x, y, d, abs2_d, abs2_t, below_bw, below_t

        def bisect(lo, hi, past_crossing):
            # log-space bisection with a fixed iteration count so results do
            # not depend on per-row convergence tests
            for _ in range(BISECTION_ITERATIONS):
                mid = np.sqrt(lo * hi)
                hi_side = past_crossing(mid)
                lo = np.where(hi_side, lo, mid)
                hi = np.where(hi_side, mid, hi)
            return np.sqrt(lo * hi)

        def past_bw(f):
            a = self._open_loop_gain(f)
            w = 2.0 * np.pi * f
            d = 1.0 + 1j * (tau_t * w) + a * (1.0 + 1j * (tau_f * w))
            abs2_a = a.real * a.real + a.imag * a.imag
            return d.real * d.real + d.imag * d.imag > 2.0 * abs2_a

        def past_pm(f):
            a = self._open_loop_gain(f)
            w = 2.0 * np.pi * f
            xm = tau_f * w
            ym = tau_t * w
            abs2_a = a.real * a.real + a.imag * a.imag
            return abs2_a * (1.0 + xm * xm) / (1.0 + ym * ym) < 1.0

        lo = self._f_search[np.maximum(bw_idx - 1, 0)]
        hi = self._f_search[bw_idx]
        bandwidth = bisect(lo, hi, past_bw)
        bandwidth = np.where(bw_ok, bandwidth, np.nan)

        lo = self._f_search[np.maximum(pm_idx - 1, 0)]
        hi = self._f_search[pm_idx]
        f_c = bisect(lo, hi, past_pm)
        w_c = 2.0 * np.pi * f_c
        t_c = self._open_loop_gain(f_c) * (1.0 + 1j * (tau_f * w_c)) \
            / (1.0 + 1j * (tau_t * w_c))
        phase_margin = 180.0 + np.degrees(np.angle(t_c))
        phase_margin = np.clip(phase_margin, 0.0, 180.0)
        # |T| < 1 everywhere: unconditionally stable, report 180 deg
        phase_margin = np.where(pm_ok, phase_margin, 180.0)

        snr = self._snr_rows(rf, tau_f, tau_t)
        return snr, bandwidth, phase_margin

    def _snr_rows(self, rf, tau_f, tau_t):
        oa = self.oa
        i_ph = self.pd.responsivity * self.cond.min_irradiance * self.pd.active_area
        i_tot2 = (oa.current_noise_density ** 2
                  + 2.0 * elementary_charge * (i_ph + self.pd.dark_current)
                  + 4.0 * Boltzmann * self.cond.temperature / rf)
        xn = tau_f[:, None] * (2.0 * np.pi * self._f_noise)[None, :]
        yn = tau_t[:, None] * (2.0 * np.pi * self._f_noise)[None, :]
        dn = 1.0 + 1j * yn + self._a_noise * (1.0 + 1j * xn)
        abs2_d = dn.real * dn.real + dn.imag * dn.imag
        abs2_a = (self._a_noise.real * self._a_noise.real
                  + self._a_noise.imag * self._a_noise.imag)
        e_n2 = oa.voltage_noise_density ** 2
        s_out = abs2_a * (e_n2 * (1.0 + yn * yn)
                          + (i_tot2 * rf * rf)[:, None]) / abs2_d
        v_noise2 = np.trapezoid(s_out, self._f_noise, axis=1)
        v_signal = i_ph * rf
        return 20.0 * np.log10(v_signal / np.sqrt(v_noise2))

    # -- scalar front ends (same code path as the batch, size-1 rows) -------

    def bandwidth(self, point: DesignPoint) -> float:
        _, bw, _ = self.performance_batch([point.rf], [point.cf], [point.vd])
        return float(bw[0])

    def phase_margin(self, point: DesignPoint) -> float:
        _, _, pm = self.performance_batch([point.rf], [point.cf], [point.vd])
        return float(pm[0])

    def snr(self, point: DesignPoint) -> float:
        s, _, _ = self.performance_batch([point.rf], [point.cf], [point.vd])
        return float(s[0])

    def evaluate(self, point: DesignPoint) -> PerformanceVariables:
        s, bw, pm = self.performance_batch([point.rf], [point.cf], [point.vd])
        return PerformanceVariables(float(s[0]), float(bw[0]), float(pm[0]))


# Spec-shaped functional interface.

def loop_gain(point, pd, oa, f):
    cond = OperatingConditions(min_irradiance=1.0, temperature=300.0)
    return CircuitEvaluator(pd, oa, cond).loop_gain(point, f)


def bandwidth(point, pd, oa) -> float:
    cond = OperatingConditions(min_irradiance=1.0, temperature=300.0)
    return CircuitEvaluator(pd, oa, cond).bandwidth(point)


def phase_margin(point, pd, oa) -> float:
    cond = OperatingConditions(min_irradiance=1.0, temperature=300.0)
    return CircuitEvaluator(pd, oa, cond).phase_margin(point)


def snr(point, pd, oa, cond) -> float:
    return CircuitEvaluator(pd, oa, cond).snr(point)


def evaluate_performance(point, pd, oa, cond) -> PerformanceVariables:
    return CircuitEvaluator(pd, oa, cond).evaluate(point)


def merit_batch(evaluator: CircuitEvaluator, merit_spec, rf, cf, vd):
    """Performance plus merit for parallel arrays; returns
    (m_snr, m_bandwidth, m_phase, global, snr_db, bandwidth_hz, phase_deg)."""
    snr_db, bw_hz, pm_deg = evaluator.performance_batch(rf, cf, vd)
    m_s, m_b, m_p, g = global_merit_arrays(snr_db, bw_hz, pm_deg, merit_spec)
    return m_s, m_b, m_p, g, snr_db, bw_hz, pm_deg

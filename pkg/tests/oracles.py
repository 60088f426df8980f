"""Independently coded reference implementations used to cross-check the
library from a second route.

Everything in this module is written directly from the governing formulas
(piecewise merit ramps, literal feedback-network impedances, brentq root
finding, exhaustive enumeration, exact order statistics) and shares no code
with the package internals it checks.
"""

import cmath
import itertools
import math

import numpy as np
from scipy.constants import Boltzmann, elementary_charge
from scipy.optimize import brentq

# -- merit functions ----------------------------------------------------------


def unilateral_merit_reference(x, x_min, x_opt):
    """Piecewise quadratic one-sided merit, scalar arithmetic.

    x_min < x_opt means a lower bound; x_min > x_opt an upper bound.
    """
    if not math.isfinite(x):
        return 0.0
    if x_min < x_opt:
        if x <= x_min:
            return 0.0
        if x >= x_opt:
            return 1.0
    else:
        if x >= x_min:
            return 0.0
        if x <= x_opt:
            return 1.0
    t = (x - x_opt) / (x_min - x_opt)
    return 1.0 - t * t


def bilateral_merit_reference(x, x_min, x_opt, x_max):
    if not math.isfinite(x):
        return 0.0
    if x <= x_min or x >= x_max:
        return 0.0
    if x < x_opt:
        t = (x - x_opt) / (x_min - x_opt)
    else:
        t = (x - x_opt) / (x_max - x_opt)
    return 1.0 - t * t


# -- exhaustive search --------------------------------------------------------


def brute_force_maximum(problem):
    """Plain nested iteration over every grid index, one point per call.

    Keeps the first strictly-greater merit, so ties resolve to the earliest
    index in row-major order. Returns (index tuple, merit).
    """
    best_index = None
    best_merit = -math.inf
    for index in itertools.product(*[range(s) for s in problem.shape]):
        m = float(problem.merit_of_indices(np.asarray([index]))[0])
        if m > best_merit:
            best_merit = m
            best_index = index
    return best_index, best_merit


# -- amplifier model ----------------------------------------------------------


def reference_input_capacitance(pd, vd, c_opamp):
    """Log-log interpolation on the C(V) knots, scalar arithmetic,
    voltage axis offset by +1 V; endpoint clamp outside the knots."""
    lv = math.log10(vd + 1.0)
    knots = [(math.log10(v + 1.0), math.log10(c)) for v, c in pd.cv_curve]
    if lv <= knots[0][0]:
        lc = knots[0][1]
    elif lv >= knots[-1][0]:
        lc = knots[-1][1]
    else:
        lc = None
        for (v0, c0), (v1, c1) in zip(knots, knots[1:]):
            if v0 <= lv <= v1:
                lc = c0 + (lv - v0) * (c1 - c0) / (v1 - v0)
                break
    return 10.0 ** lc + c_opamp


def reference_loop_gain(rf, cf, cin, oa, f):
    a = oa.dc_gain / (1.0 + 1j * f * oa.dc_gain / oa.gbw)
    w = 2.0 * math.pi * f
    z_f = rf / (1.0 + 1j * w * rf * cf)
    z_in = 1.0 / (1j * w * cin)
    return a * z_in / (z_in + z_f)


def reference_performance(rf, cf, vd, pd, oa, cond,
                          points_per_decade=1000):
    """Full pipeline recomputation from the literal feedback network.

    Transimpedance comes from the textbook closed-loop division
    Z_T = Z_f T / (1 + T), crossings are found by scanning 200 points per
    decade and polishing with brentq, and the noise integral runs on its
    own denser trapezoid grid. Returns (snr_db, bandwidth_hz, phase_deg).
    """
    cin = reference_input_capacitance(pd, vd, oa.input_capacitance)

    def a_ol(f):
        return oa.dc_gain / (1.0 + 1j * f * oa.dc_gain / oa.gbw)

    def t_loop(f):
        w = 2.0 * math.pi * f
        z_f = rf / (1.0 + 1j * w * rf * cf)
        z_in = 1.0 / (1j * w * cin)
        return a_ol(f) * z_in / (z_in + z_f)

    def z_t(f):
        w = 2.0 * math.pi * f
        z_f = rf / (1.0 + 1j * w * rf * cf)
        t = t_loop(f)
        return z_f * t / (1.0 + t)

    f_max = 10.0 * oa.gbw
    scan = np.logspace(0.0, math.log10(f_max), int(200 * math.log10(f_max)) + 1)

    # -3 dB bandwidth: first |Z_T| crossing of Rf / sqrt(2)
    target = rf / math.sqrt(2.0)

    def below_bw(f):
        return abs(z_t(f)) - target

    bandwidth = math.nan
    for f0, f1 in zip(scan, scan[1:]):
        if below_bw(f1) < 0.0 <= below_bw(f0):
            log_f = brentq(lambda lf: below_bw(10.0 ** lf),
                           math.log10(f0), math.log10(f1), xtol=1e-13)
            bandwidth = 10.0 ** log_f
            break

    # phase margin at the unity-|T| crossing
    def above_unity(f):
        return abs(t_loop(f)) - 1.0

    phase_deg = 180.0
    for f0, f1 in zip(scan, scan[1:]):
        if above_unity(f1) < 0.0 <= above_unity(f0):
            log_f = brentq(lambda lf: above_unity(10.0 ** lf),
                           math.log10(f0), math.log10(f1), xtol=1e-13)
            f_c = 10.0 ** log_f
            phase_deg = 180.0 + math.degrees(cmath.phase(t_loop(f_c)))
            break
    phase_deg = min(max(phase_deg, 0.0), 180.0)

    # output-referred noise, integrated over the same decade span as the
    # library but on a 10x denser grid
    if cond.noise_integration_decades is not None:
        decades = float(cond.noise_integration_decades)
    else:
        decades = math.log10(min(10.0 * oa.gbw, 1e9))
    grid = np.logspace(0.0, decades, int(points_per_decade * decades) + 1)
    i_ph = pd.responsivity * cond.min_irradiance * pd.active_area
    i_tot2 = (oa.current_noise_density ** 2
              + 2.0 * elementary_charge * (i_ph + pd.dark_current)
              + 4.0 * Boltzmann * cond.temperature / rf)
    e_n2 = oa.voltage_noise_density ** 2
    s_out = np.array([e_n2 * abs(a_ol(f) / (1.0 + t_loop(f))) ** 2
                      + i_tot2 * abs(z_t(f)) ** 2 for f in grid])
    v_noise = math.sqrt(np.trapezoid(s_out, grid))
    snr_db = 20.0 * math.log10(i_ph * rf / v_noise)
    return snr_db, bandwidth, phase_deg


# -- sampling statistics ------------------------------------------------------


def analytic_best_of_n_eps95(merit_values, n_draws, quantile=0.95):
    """Exact 95th-percentile shortfall of best-of-n uniform sampling,
    from the full tabulated merit distribution.

    With F<(m) = P(one draw < m), the best of n independent draws reaches
    at least m with probability 1 - F<(m)^n; the reported eps95 is the
    smallest shortfall whose reach probability meets the quantile.
    """
    flat = np.asarray(merit_values, dtype=float).ravel()
    values, counts = np.unique(flat, return_counts=True)
    m_ref = values[-1]
    below = np.concatenate(([0.0], np.cumsum(counts)[:-1])) / flat.size
    reach = 1.0 - below ** n_draws
    eps = 100.0 * (m_ref - values) / m_ref
    return float(eps[reach >= quantile].min())

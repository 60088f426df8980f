"""Merit landscapes over discrete design spaces.

A landscape binds a design space to a merit value per grid point. Search
algorithms only ever see the landscape protocol:

    shape                    tuple of axis lengths
    merit_of_indices(idx)    (n, d) int array -> (n,) merit values

Circuit landscapes evaluate the amplifier model lazily or tabulate it once
(the tabulated form is what repeated statistical experiments draw from).
The separable quadratic landscape is an analytically known test surface.
"""

from dataclasses import dataclass

import numpy as np

from .circuit import CircuitEvaluator, PerformanceVariables, merit_batch
from .merit import MeritBreakdown, MeritSpec, global_merit
from .space import DesignPoint, DesignSpace

EVAL_CHUNK = 4096


class CircuitLandscape:
    """Lazy merit evaluation of a TIA design space."""

    def __init__(self, space: DesignSpace, evaluator: CircuitEvaluator,
                 merit_spec: MeritSpec):
        self.space = space
        self.evaluator = evaluator
        self.merit_spec = merit_spec

    @property
    def shape(self):
        return self.space.shape

    def merit_of_indices(self, idx) -> np.ndarray:
        idx = np.asarray(idx)
        rf = self.space.rf_values[idx[:, 0]]
        cf = self.space.cf_values[idx[:, 1]]
        vd = self.space.vd_values[idx[:, 2]]
        out = np.empty(idx.shape[0])
        for lo in range(0, idx.shape[0], EVAL_CHUNK):
            hi = min(lo + EVAL_CHUNK, idx.shape[0])
            *_, g, _, _, _ = merit_batch(self.evaluator, self.merit_spec,
                                         rf[lo:hi], cf[lo:hi], vd[lo:hi])
            out[lo:hi] = g
        return out

    def point_at(self, i: int, j: int, k: int) -> DesignPoint:
        return self.space.point_at(i, j, k)

    def breakdown_at(self, i: int, j: int, k: int) -> MeritBreakdown:
        perf = self.evaluator.evaluate(self.space.point_at(i, j, k))
        return global_merit(perf, self.merit_spec)

    def performance_at(self, i: int, j: int, k: int) -> PerformanceVariables:
        return self.evaluator.evaluate(self.space.point_at(i, j, k))

    def tabulate(self, progress=None) -> "TabulatedLandscape":
        return tabulate_landscape(self.space, self.evaluator, self.merit_spec,
                                  progress=progress)


@dataclass
class TabulatedLandscape:
    """Full merit and performance tables on the design grid.

    Arrays are indexed [i_rf, j_cf, k_vd]. The global merit table is the
    product of the three single-variable tables, entry by entry.
    """

    space: DesignSpace
    merit: np.ndarray
    m_snr: np.ndarray
    m_bandwidth: np.ndarray
    m_phase: np.ndarray
    snr_db: np.ndarray
    bandwidth_hz: np.ndarray
    phase_margin_deg: np.ndarray

    @property
    def shape(self):
        return self.space.shape

    def merit_of_indices(self, idx) -> np.ndarray:
        idx = np.asarray(idx)
        return self.merit[idx[:, 0], idx[:, 1], idx[:, 2]]

    def point_at(self, i: int, j: int, k: int) -> DesignPoint:
        return self.space.point_at(i, j, k)

    def breakdown_at(self, i: int, j: int, k: int) -> MeritBreakdown:
        return MeritBreakdown(float(self.m_snr[i, j, k]),
                              float(self.m_bandwidth[i, j, k]),
                              float(self.m_phase[i, j, k]),
                              float(self.merit[i, j, k]))

    def performance_at(self, i: int, j: int, k: int) -> PerformanceVariables:
        return PerformanceVariables(float(self.snr_db[i, j, k]),
                                    float(self.bandwidth_hz[i, j, k]),
                                    float(self.phase_margin_deg[i, j, k]))

    def best_index(self):
        """Grid index of the maximum merit; first occurrence in row-major
        (rf outermost) order on ties."""
        flat = int(np.argmax(self.merit))
        return np.unravel_index(flat, self.merit.shape)

    def max_merit(self) -> float:
        return float(self.merit.max())

    def nonzero_fraction(self) -> float:
        return float(np.count_nonzero(self.merit) / self.merit.size)

    def projection_max(self, axis_keep: int) -> np.ndarray:
        """Merit maximized over the two axes other than axis_keep."""
        axes = tuple(a for a in range(3) if a != axis_keep)
        return self.merit.max(axis=axes)


def tabulate_landscape(space: DesignSpace, evaluator: CircuitEvaluator,
                       merit_spec: MeritSpec, chunk_size: int = EVAL_CHUNK,
                       progress=None) -> TabulatedLandscape:
    """Evaluate every grid point in row-major order, chunked.

    Chunking only batches rows; every computed value is bit-identical to a
    single-point evaluation of the same design.
    """
    n = space.cardinality()
    shape = space.shape
    arrays = {name: np.empty(n) for name in
              ("merit", "m_snr", "m_bandwidth", "m_phase",
               "snr_db", "bandwidth_hz", "phase_margin_deg")}
    for lo in range(0, n, chunk_size):
        hi = min(lo + chunk_size, n)
        i, j, k = np.unravel_index(np.arange(lo, hi), shape)
        m_s, m_b, m_p, g, s_db, bw, pm = merit_batch(
            evaluator, merit_spec,
            space.rf_values[i], space.cf_values[j], space.vd_values[k])
        arrays["merit"][lo:hi] = g
        arrays["m_snr"][lo:hi] = m_s
        arrays["m_bandwidth"][lo:hi] = m_b
        arrays["m_phase"][lo:hi] = m_p
        arrays["snr_db"][lo:hi] = s_db
        arrays["bandwidth_hz"][lo:hi] = bw
        arrays["phase_margin_deg"][lo:hi] = pm
        if progress is not None:
            progress(hi, n)
    return TabulatedLandscape(space=space,
                              **{k: v.reshape(shape) for k, v in arrays.items()})


@dataclass(frozen=True)
class SeparableQuadraticLandscape:
    """Analytic test surface: merit(x) = max(0, 1 - sum_i ((x_i - c_i)/s_i)^2).

    Separable by construction, so the exact maximum sits at the grid point
    nearest each center coordinate independently.
    """

    axes: tuple
    centers: tuple
    scales: tuple

    def __post_init__(self):
        if not (len(self.axes) == len(self.centers) == len(self.scales)):
            raise ValueError("axes, centers, scales must have equal length")
        if len(self.axes) == 0:
            raise ValueError("need at least one axis")
        for s in self.scales:
            if not s > 0:
                raise ValueError("scales must be positive")
        for ax in self.axes:
            if np.asarray(ax).size == 0:
                raise ValueError("axes must be non-empty")

    @property
    def shape(self):
        return tuple(np.asarray(ax).size for ax in self.axes)

    def _axis_terms(self):
        return [((np.asarray(ax, dtype=float) - c) / s) ** 2
                for ax, c, s in zip(self.axes, self.centers, self.scales)]

    def merit_of_indices(self, idx) -> np.ndarray:
        idx = np.asarray(idx)
        total = np.zeros(idx.shape[0])
        for d, term in enumerate(self._axis_terms()):
            total += term[idx[:, d]]
        return np.maximum(1.0 - total, 0.0)

    def point_at(self, *index):
        return tuple(float(np.asarray(ax)[i]) for ax, i in zip(self.axes, index))

    def merit_table(self) -> np.ndarray:
        """Dense merit array over the full grid (for exhaustive checks)."""
        terms = self._axis_terms()
        d = len(terms)
        total = np.zeros(self.shape)
        for a, term in enumerate(terms):
            sl = [None] * d
            sl[a] = slice(None)
            total = total + term[tuple(sl)]
        return np.maximum(1.0 - total, 0.0)


def make_scaling_surface(d: int = 4, points_per_axis: int = 31) -> SeparableQuadraticLandscape:
    """Reference surface for dimension-scaling experiments.

    Unit-interval axes with off-lattice centers so the optimum is unique and
    the level sets near it are ellipsoidal, which gives Monte Carlo sampling
    its 2/d convergence exponent.
    """
    base_centers = (0.47, 0.53, 0.41, 0.58, 0.44, 0.56, 0.49, 0.52)
    if d < 1 or d > len(base_centers):
        raise ValueError(f"d must be in [1, {len(base_centers)}]")
    axes = tuple(np.linspace(0.0, 1.0, points_per_axis) for _ in range(d))
    return SeparableQuadraticLandscape(axes=axes,
                                       centers=base_centers[:d],
                                       scales=(0.75,) * d)

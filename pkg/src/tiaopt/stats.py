"""Statistical harness for repeated stochastic-search experiments.

Quantifies how close a randomized search gets to the known global optimum:
per run, the percent relative shortfall

    epsilon = 100 (M_ref - M) / M_ref

and across runs the nearest-rank 95th percentile eps95, the cumulative
distribution F(epsilon), and least-squares power-law fits eps95 ~ N^(-beta)
on log-log axes.
"""

import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .optimizers import SearchFailure, SearchResult

CENSORED_EPS = 100.0


def epsilon(merit: float, merit_syst: float) -> float:
    """Percent shortfall of a run's best merit against the reference optimum."""
    if not merit_syst > 0:
        raise ValueError("reference merit must be positive")
    if merit < 0:
        raise ValueError("merit must be non-negative")
    if merit > merit_syst:
        raise ValueError("merit exceeds the reference; the reference must be "
                         "the global optimum of the same landscape")
    return 100.0 * (merit_syst - merit) / merit_syst


def epsilon95(epsilons) -> float:
    """Nearest-rank 95th percentile: the value at rank ceil(0.95 n)."""
    eps = np.asarray(epsilons, dtype=float)
    if eps.size == 0:
        raise ValueError("epsilon list is empty")
    rank = int(np.ceil(0.95 * eps.size))
    return float(np.sort(eps)[rank - 1])


def cumulative_distribution(epsilons, grid) -> list:
    """F(x) = fraction of samples <= x, evaluated on the given grid."""
    eps = np.sort(np.asarray(epsilons, dtype=float))
    grid = np.asarray(grid, dtype=float)
    if eps.size == 0 or grid.size == 0:
        raise ValueError("epsilons and grid must be non-empty")
    counts = np.searchsorted(eps, grid, side="right")
    return [(float(x), float(c) / eps.size) for x, c in zip(grid, counts)]


@dataclass(frozen=True)
class RunRecord:
    run_index: int
    seed: int
    epsilon: float
    best_merit: float
    evaluations: int       # actual model evaluations, not the nominal budget
    elapsed_s: float
    failed: bool = False
    best_index: Optional[tuple] = None


@dataclass
class ExperimentStats:
    epsilons: np.ndarray           # sorted ascending, values in [0, 100]
    eps95: float
    n_runs: int
    algorithm_config: dict
    reference_merit: float
    runs: list = field(default_factory=list)
    n_failed: int = 0

    @property
    def censored(self) -> bool:
        """True when the 95th-percentile rank landed on a total miss."""
        return self.eps95 >= CENSORED_EPS

    def __post_init__(self):
        eps = np.asarray(self.epsilons, dtype=float)
        if np.any(np.diff(eps) < 0):
            raise ValueError("epsilons must be sorted ascending")
        if eps.size and (eps[0] < 0 or eps[-1] > 100):
            raise ValueError("epsilon values must lie in [0, 100]")
        self.epsilons = eps


def run_experiments(run_algorithm: Callable[[int], SearchResult],
                    n_runs: int, base_seed: int, reference_merit: float,
                    algorithm_config: Optional[dict] = None) -> ExperimentStats:
    """Repeat a seeded search n_runs times; run i uses seed base_seed + i.

    A run that raises SearchFailure (e.g. the GA cannot assemble a viable
    starting population) is recorded as a total miss, epsilon = 100.
    """
    if n_runs < 1:
        raise ValueError("n_runs must be >= 1")
    records = []
    for i in range(n_runs):
        seed = base_seed + i
        t0 = time.perf_counter()
        try:
            result = run_algorithm(seed)
            eps = epsilon(result.best_merit, reference_merit)
            records.append(RunRecord(i, seed, eps, result.best_merit,
                                     result.n_evaluations_actual,
                                     time.perf_counter() - t0,
                                     best_index=result.best_index))
        except SearchFailure as err:
            records.append(RunRecord(i, seed, CENSORED_EPS, 0.0,
                                     getattr(err, "n_attempts", 0),
                                     time.perf_counter() - t0, failed=True))
    eps = np.sort([r.epsilon for r in records])
    return ExperimentStats(epsilons=eps,
                           eps95=epsilon95(eps),
                           n_runs=n_runs,
                           algorithm_config=dict(algorithm_config or {}),
                           reference_merit=reference_merit,
                           runs=records,
                           n_failed=sum(r.failed for r in records))


@dataclass(frozen=True)
class PowerLawFit:
    beta: float            # positive for a decreasing law eps95 ~ N^(-beta)
    log_intercept: float   # base-10 intercept: log10(eps95) at log10(N) = 0
    r_squared: float
    n_points: int


def fit_power_law(points: Sequence) -> PowerLawFit:
    """Least-squares fit of log10(eps95) against log10(N).

    Censored points (eps95 = 100, a rank landing on a total miss) carry no
    scaling information and must be excluded by the caller before fitting.
    """
    pts = [(float(n), float(e)) for n, e in points]
    if len(pts) < 3:
        raise ValueError("power-law fit needs at least 3 points")
    for n, e in pts:
        if n <= 0 or e <= 0:
            raise ValueError("power-law fit needs positive N and eps95")
    log_n = np.log10([p[0] for p in pts])
    log_e = np.log10([p[1] for p in pts])
    design = np.vstack([log_n, np.ones_like(log_n)]).T
    coef, residual, *_ = np.linalg.lstsq(design, log_e, rcond=None)
    ss_tot = float(((log_e - log_e.mean()) ** 2).sum())
    if ss_tot > 0:
        ss_res = float(residual[0]) if residual.size else \
            float(((log_e - design @ coef) ** 2).sum())
        r2 = 1.0 - ss_res / ss_tot
    else:
        r2 = 1.0
    return PowerLawFit(beta=float(-coef[0]), log_intercept=float(coef[1]),
                       r_squared=r2, n_points=len(pts))

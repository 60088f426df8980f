"""Search algorithms over discrete design-space landscapes.

Three strategies share one problem protocol (shape + merit_of_indices):

  SystematicSearch   exhaustive sweep, exact optimum
  MonteCarloSearch   uniform random sampling, best-of-N
  GeneticSearch      generational GA on (Rf, Cf, VD) index chromosomes

All three are deterministic for a fixed seed. The GA follows the classic
recipe: viable-only initial population, acceptance-rejection selection
proportional to relative merit, single-point-free three-gene recombination
(one of three swap patterns, uniformly chosen), a fixed percentage of
single-gene uniform mutations from the second generation on, and full
generational replacement with no elitism; the reported best is the running
maximum over every generation including the initial one.
"""

import time
from dataclasses import dataclass
from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator

from .validation import check_rng, check_scalar

INIT_BATCH = 4096
SELECTION_BATCH_FACTOR = 4
DEFAULT_SELECTION_FLOOR = 0.05
DEFAULT_INIT_ATTEMPT_CAP = 1_000_000


class SearchFailure(RuntimeError):
    """A run could not produce a result (distinct from a zero-merit best)."""


class GAInitializationError(SearchFailure):
    """Viable-population assembly exceeded the attempt cap."""

    def __init__(self, n_attempts: int, zero_merit_fraction: float):
        self.n_attempts = n_attempts
        self.zero_merit_fraction = zero_merit_fraction
        super().__init__(
            f"could not assemble a viable population in {n_attempts} draws "
            f"({100.0 * zero_merit_fraction:.2f}% of sampled designs had "
            f"zero merit)")


@dataclass(frozen=True)
class GenerationRecord:
    generation: int          # 1-based; generation 1 is the initial population
    generation_best: float   # best merit within this generation's population
    running_best: float      # best merit over all generations so far


@dataclass(frozen=True)
class SearchResult:
    algorithm: str
    best_index: tuple
    best_point: object
    best_merit: float
    breakdown: object
    n_evaluations_nominal: int
    n_evaluations_actual: int
    seed: Optional[int]
    elapsed_s: float
    history: Optional[tuple] = None


def _finish(problem, algorithm, best_flat_index, best_merit, nominal, actual,
            seed, t0, history=None) -> SearchResult:
    index = tuple(int(v) for v in np.unravel_index(best_flat_index,
                                                   problem.shape))
    point = problem.point_at(*index)
    breakdown = problem.breakdown_at(*index) \
        if hasattr(problem, "breakdown_at") else None
    return SearchResult(algorithm=algorithm, best_index=index,
                        best_point=point, best_merit=float(best_merit),
                        breakdown=breakdown, n_evaluations_nominal=nominal,
                        n_evaluations_actual=actual, seed=seed,
                        elapsed_s=time.perf_counter() - t0, history=history)


class SystematicSearch(BaseEstimator):
    """Exhaustive row-major sweep of the whole space.

    Ties resolve to the first point in row-major order, so the result is
    independent of chunk size.
    """

    def __init__(self, chunk_size: int = INIT_BATCH):
        self.chunk_size = chunk_size

    def fit(self, problem):
        check_scalar(self.chunk_size, "chunk_size", minimum=1, integral=True)
        t0 = time.perf_counter()
        shape = tuple(problem.shape)
        n = int(np.prod(shape))
        best_merit = -np.inf
        best_flat = 0
        for lo in range(0, n, self.chunk_size):
            hi = min(lo + self.chunk_size, n)
            idx = np.column_stack(np.unravel_index(np.arange(lo, hi), shape))
            merits = problem.merit_of_indices(idx)
            local = int(np.argmax(merits))
            if merits[local] > best_merit:
                best_merit = float(merits[local])
                best_flat = lo + local
        self.result_ = _finish(problem, "systematic", best_flat, best_merit,
                               n, n, None, t0)
        self.best_index_ = self.result_.best_index
        self.best_point_ = self.result_.best_point
        self.best_merit_ = self.result_.best_merit
        return self


class MonteCarloSearch(BaseEstimator):
    """Best of n_mc uniform draws (with replacement) over the grid."""

    def __init__(self, n_mc: int = 1000, seed: Optional[int] = None):
        self.n_mc = n_mc
        self.seed = seed

    def fit(self, problem):
        check_scalar(self.n_mc, "n_mc", minimum=1, integral=True)
        t0 = time.perf_counter()
        rng = np.random.default_rng(self.seed)
        shape = np.asarray(problem.shape)
        idx = rng.integers(0, shape, size=(self.n_mc, shape.size))
        merits = problem.merit_of_indices(idx)
        best = int(np.argmax(merits))   # first occurrence on ties
        best_flat = int(np.ravel_multi_index(idx[best], problem.shape))
        self.result_ = _finish(problem, "montecarlo", best_flat,
                               float(merits[best]), self.n_mc, self.n_mc,
                               self.seed, t0)
        self.best_index_ = self.result_.best_index
        self.best_point_ = self.result_.best_point
        self.best_merit_ = self.result_.best_merit
        return self


# -- GA building blocks ------------------------------------------------------

def ga_init_population(rng, problem, n_c: int,
                       attempt_cap: int = DEFAULT_INIT_ATTEMPT_CAP,
                       batch: int = INIT_BATCH):
    """Draw uniform candidates until n_c have nonzero merit.

    Every candidate drawn counts as one evaluation. Returns
    (population indices (n_c, d), merits (n_c,), attempts).
    """
    check_rng(rng)
    shape = np.asarray(problem.shape)
    pop = np.empty((n_c, shape.size), dtype=np.int64)
    merits = np.empty(n_c)
    got = 0
    attempts = 0
    while got < n_c:
        if attempts >= attempt_cap:
            zero_frac = 1.0 - got / attempts if attempts else 1.0
            raise GAInitializationError(attempts, zero_frac)
        cand = rng.integers(0, shape, size=(batch, shape.size))
        m = problem.merit_of_indices(cand)
        attempts += batch
        keep = np.flatnonzero(m > 0)[:n_c - got]
        pop[got:got + keep.size] = cand[keep]
        merits[got:got + keep.size] = m[keep]
        got += keep.size
    return pop, merits, attempts


def ga_select_parent(rng, merits,
                     selection_floor: float = DEFAULT_SELECTION_FLOOR) -> int:
    """Acceptance-rejection selection: candidate i is accepted with
    probability max(merit_i / merit_max, floor). Zero-merit populations
    fall back to uniform selection."""
    check_rng(rng)
    merits = np.asarray(merits, dtype=float)
    n = merits.size
    merit_max = merits.max()
    if merit_max <= 0:
        return int(rng.integers(0, n))
    while True:
        cand = int(rng.integers(0, n))
        if rng.random() < max(merits[cand] / merit_max, selection_floor):
            return cand


def ga_recombine(rng, parent_a, parent_b):
    """One of three gene-swap patterns, uniformly chosen, applied to a
    (rf, cf, vd) index pair; returns two complementary children."""
    check_rng(rng)
    mode = int(rng.integers(0, 3))
    a = np.array(parent_a, copy=True)
    b = np.array(parent_b, copy=True)
    child1, child2 = a.copy(), b.copy()
    if mode in (0, 2):      # swap the cf gene
        child1[1], child2[1] = b[1], a[1]
    if mode in (0, 1):      # swap the vd gene
        child1[2], child2[2] = b[2], a[2]
    return child1, child2


def ga_mutate(rng, population, mutation_percent: float, shape):
    """Redraw one uniformly chosen gene in round(n_c * percent / 100)
    distinct chromosomes, in place."""
    check_rng(rng)
    n_c = population.shape[0]
    n_mut = int(round(n_c * mutation_percent / 100.0))
    if n_mut == 0:
        return population
    highs = np.asarray(shape)
    which = rng.choice(n_c, size=n_mut, replace=False)
    genes = rng.integers(0, population.shape[1], size=n_mut)
    population[which, genes] = rng.integers(0, highs[genes])
    return population


class GeneticSearch(BaseEstimator):
    """Generational GA over three-gene index chromosomes.

    n_c must be even (chromosomes pair into n_c/2 couples). The nominal
    budget is n_c * generations; the actual count also includes the extra
    draws the viable-only initialization spends on zero-merit candidates.
    Selection draws candidates in blocks for speed; the per-candidate
    acceptance rule is exactly ga_select_parent's.
    """

    def __init__(self, n_c: int = 1000, generations: int = 10,
                 mutation_percent: float = 5.0, seed: Optional[int] = None,
                 selection_floor: float = DEFAULT_SELECTION_FLOOR,
                 init_attempt_cap: int = DEFAULT_INIT_ATTEMPT_CAP):
        self.n_c = n_c
        self.generations = generations
        self.mutation_percent = mutation_percent
        self.seed = seed
        self.selection_floor = selection_floor
        self.init_attempt_cap = init_attempt_cap

    def _select_parents(self, rng, merits):
        n_c = merits.size
        merit_max = merits.max()
        parents = np.empty(n_c, dtype=np.int64)
        filled = 0
        block = SELECTION_BATCH_FACTOR * n_c
        while filled < n_c:
            cand = rng.integers(0, n_c, size=block)
            u = rng.random(block)
            if merit_max > 0:
                p = np.maximum(merits[cand] / merit_max, self.selection_floor)
            else:
                p = np.ones(block)
            accepted = cand[u < p]
            take = min(accepted.size, n_c - filled)
            parents[filled:filled + take] = accepted[:take]
            filled += take
        return parents

    def fit(self, problem):
        check_scalar(self.n_c, "n_c", minimum=2, integral=True)
        if self.n_c % 2 != 0:
            raise ValueError("n_c must be even: chromosomes pair into "
                             "n_c/2 couples")
        check_scalar(self.generations, "generations", minimum=1, integral=True)
        check_scalar(self.mutation_percent, "mutation_percent",
                     minimum=0.0, maximum=100.0)
        check_scalar(self.selection_floor, "selection_floor",
                     minimum=0.0, maximum=1.0)
        check_scalar(self.init_attempt_cap, "init_attempt_cap", minimum=1,
                     integral=True)
        shape = tuple(problem.shape)
        if len(shape) != 3:
            raise ValueError("the genetic search is defined for three-gene "
                             "chromosomes (rf, cf, vd)")
        t0 = time.perf_counter()
        rng = np.random.default_rng(self.seed)

        pop, merits, attempts = ga_init_population(
            rng, problem, self.n_c, attempt_cap=self.init_attempt_cap)
        best_at = int(np.argmax(merits))
        best_merit = float(merits[best_at])
        best_chromosome = pop[best_at].copy()
        history = [GenerationRecord(1, best_merit, best_merit)]

        highs = np.asarray(shape)
        for gen in range(2, self.generations + 1):
            parents = self._select_parents(rng, merits)
            p1 = pop[parents[0::2]]
            p2 = pop[parents[1::2]]
            mode = rng.integers(0, 3, size=self.n_c // 2)
            c1 = p1.copy()
            c2 = p2.copy()
            swap_cf = (mode == 0) | (mode == 2)
            swap_vd = (mode == 0) | (mode == 1)
            c1[swap_cf, 1] = p2[swap_cf, 1]
            c2[swap_cf, 1] = p1[swap_cf, 1]
            c1[swap_vd, 2] = p2[swap_vd, 2]
            c2[swap_vd, 2] = p1[swap_vd, 2]
            pop = np.concatenate([c1, c2], axis=0)
            ga_mutate(rng, pop, self.mutation_percent, highs)
            merits = problem.merit_of_indices(pop)
            gen_at = int(np.argmax(merits))
            gen_best = float(merits[gen_at])
            if gen_best > best_merit:
                best_merit = gen_best
                best_chromosome = pop[gen_at].copy()
            history.append(GenerationRecord(gen, gen_best, best_merit))

        nominal = self.n_c * self.generations
        actual = attempts + self.n_c * (self.generations - 1)
        best_flat = int(np.ravel_multi_index(best_chromosome, shape))
        self.result_ = _finish(problem, "ga", best_flat, best_merit, nominal,
                               actual, self.seed, t0, history=tuple(history))
        self.best_index_ = self.result_.best_index
        self.best_point_ = self.result_.best_point
        self.best_merit_ = self.result_.best_merit
        self.n_init_attempts_ = attempts
        self.history_ = self.result_.history
        return self


# -- functional front ends ----------------------------------------------------

def _circuit_problem(space, evaluator, merit_spec):
    from .landscape import CircuitLandscape
    return CircuitLandscape(space, evaluator, merit_spec)


def systematic_search(space, evaluator, merit_spec) -> SearchResult:
    problem = _circuit_problem(space, evaluator, merit_spec)
    return SystematicSearch().fit(problem).result_


def montecarlo_search(space, evaluator, merit_spec, n_mc: int,
                      seed: Optional[int] = None) -> SearchResult:
    problem = _circuit_problem(space, evaluator, merit_spec)
    return MonteCarloSearch(n_mc=n_mc, seed=seed).fit(problem).result_


def ga_search(space, evaluator, merit_spec, n_c: int, generations: int,
              mutation_percent: float, seed: Optional[int] = None,
              **kwargs) -> SearchResult:
    problem = _circuit_problem(space, evaluator, merit_spec)
    est = GeneticSearch(n_c=n_c, generations=generations,
                        mutation_percent=mutation_percent, seed=seed, **kwargs)
    return est.fit(problem).result_

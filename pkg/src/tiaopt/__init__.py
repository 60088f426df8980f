"""tiaopt: photodetector front-end design optimization.

Selects the feedback resistor, feedback capacitor, and photodiode bias of a
transimpedance amplifier from discrete commercial component values, scoring
each candidate with a product-of-merits function over signal-to-noise ratio,
bandwidth, and phase margin, and searching the space exhaustively, by Monte
Carlo sampling, or with a genetic algorithm. A statistics harness measures
how fast the stochastic searches approach the exhaustive optimum.
"""

from .circuit import (CircuitEvaluator, PerformanceVariables, bandwidth,
                      evaluate_performance, loop_gain, phase_margin, snr)
from .devices import (OpAmpParams, OperatingConditions, PhotodiodeParams,
                      diode_capacitance, load_opamp, load_photodiode)
from .eseries import ESeriesSpec, e_series_values, points_per_decade
from .landscape import (CircuitLandscape, SeparableQuadraticLandscape,
                        TabulatedLandscape, make_scaling_surface,
                        tabulate_landscape)
from .merit import (LOWER_BOUNDED, UPPER_BOUNDED, BilateralSpec,
                    MeritBreakdown, MeritSpec, UnilateralSpec, global_merit,
                    global_merit_arrays, merit_bilateral, merit_unilateral)
from .optimizers import (GAInitializationError, GenerationRecord,
                         GeneticSearch, MonteCarloSearch, SearchFailure,
                         SearchResult, SystematicSearch, ga_init_population,
                         ga_mutate, ga_recombine, ga_search, ga_select_parent,
                         montecarlo_search, systematic_search)
from .runconfig import ConfigError, RunConfig, load_run_config
from .space import (DesignPoint, DesignSpace, discretize_bias,
                    enumerate_points, sample_uniform, sample_uniform_indices)
from .stats import (ExperimentStats, PowerLawFit, RunRecord,
                    cumulative_distribution, epsilon, epsilon95,
                    fit_power_law, run_experiments)

__version__ = "0.1.0"

__all__ = [
    "BilateralSpec", "CircuitEvaluator", "CircuitLandscape", "ConfigError",
    "DesignPoint", "DesignSpace", "ESeriesSpec", "ExperimentStats",
    "GAInitializationError", "GenerationRecord", "GeneticSearch",
    "LOWER_BOUNDED", "MeritBreakdown", "MeritSpec", "MonteCarloSearch",
    "OpAmpParams", "OperatingConditions", "PerformanceVariables",
    "PhotodiodeParams", "PowerLawFit", "RunConfig", "RunRecord",
    "SearchFailure", "SearchResult", "SeparableQuadraticLandscape",
    "SystematicSearch", "TabulatedLandscape", "UPPER_BOUNDED",
    "UnilateralSpec", "bandwidth", "cumulative_distribution",
    "diode_capacitance", "discretize_bias", "e_series_values", "epsilon",
    "epsilon95", "enumerate_points", "evaluate_performance",
    "fit_power_law", "ga_init_population", "ga_mutate", "ga_recombine",
    "ga_search", "ga_select_parent", "global_merit", "global_merit_arrays",
    "load_opamp", "load_photodiode", "loop_gain", "make_scaling_surface",
    "merit_bilateral", "merit_unilateral", "montecarlo_search",
    "phase_margin", "points_per_decade", "run_experiments",
    "sample_uniform", "sample_uniform_indices", "snr", "systematic_search",
    "tabulate_landscape",
]

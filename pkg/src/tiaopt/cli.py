"""Command-line front end.

Three commands, each driven by one YAML run config:

  systematic   exhaustive sweep; best point, projection tables, optional grid
  search       one seeded Monte Carlo or GA run
  experiment   repeated stochastic runs, eps95 statistics, power-law fits

Common flags: --config <file> --out <dir> [--threads <n>] [--seed <n>].
--seed overrides the configured seed (search) or base seed (experiment).
--threads is accepted for interface stability but evaluation is vectorized
in-process, so the flag does not change scheduling; outputs are identical
for every value.

All results are computed before the first file is written, so a failing run
leaves no partial output. Exit code 0 means every requested output file was
fully written.
"""

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import reporting
from .landscape import tabulate_landscape
from .optimizers import (GeneticSearch, MonteCarloSearch, SearchFailure,
                         SystematicSearch)
from .runconfig import ConfigError, RunConfig, load_run_config
from .stats import fit_power_law, run_experiments

REFERENCE_CACHE_SUFFIX = ".refcache.json"


def reference_cache_path(config_path) -> Path:
    config_path = Path(config_path)
    return config_path.with_name(config_path.name + REFERENCE_CACHE_SUFFIX)


def _branch_values(space, index):
    return {"rf": float(space.rf_values[index[0]]),
            "cf": float(space.cf_values[index[1]]),
            "vd": float(space.vd_values[index[2]])}


def _best_block(table, index):
    breakdown = table.breakdown_at(*index)
    perf = table.performance_at(*index)
    return {**_branch_values(table.space, index),
            "index": list(index),
            "m_snr": breakdown.m_snr,
            "m_bandwidth": breakdown.m_bandwidth,
            "m_phase": breakdown.m_phase,
            "merit": breakdown.global_merit,
            "snr_db": perf.snr_db,
            "bandwidth_hz": perf.bandwidth_hz,
            "phase_margin_deg": perf.phase_margin_deg}


def _write_reference_cache(cfg: RunConfig, best: dict, cardinality: int):
    reporting.write_json(reference_cache_path(cfg.config_path), {
        "landscape_hash": cfg.landscape_hash,
        "best": best,
        "cardinality": cardinality,
    })


def _load_reference_cache(cfg: RunConfig):
    path = reference_cache_path(cfg.config_path)
    if not path.exists():
        return None
    try:
        record = reporting.read_json(path)
    except (OSError, ValueError):
        return None
    if record.get("landscape_hash") != cfg.landscape_hash:
        return None
    return record


# -- systematic ---------------------------------------------------------------

def cmd_systematic(cfg: RunConfig, out_dir: Path) -> list:
    if cfg.algorithm is None or cfg.algorithm["name"] != "systematic":
        raise ConfigError("the systematic command needs an algorithm section "
                          "with name: systematic")
    t0 = time.perf_counter()
    table = cfg.build_landscape().tabulate()
    est = SystematicSearch().fit(table)
    result = est.result_
    elapsed = time.perf_counter() - t0
    index = result.best_index
    best = _best_block(table, index)
    space = table.space

    calibration = None
    if cfg.calibration is not None:
        calibration = _calibration_block(cfg)

    outputs = {}
    outputs[out_dir / "best.csv"] = (
        reporting.SEARCH_RECORD_HEADER + ["snr_db", "bandwidth_hz",
                                          "phase_margin_deg"],
        [reporting.search_record_row(result)
         + [best["snr_db"], best["bandwidth_hz"], best["phase_margin_deg"]]])

    if cfg.output["projections"]:
        i, j, k = index
        nr, nc, nv = space.shape
        outputs[out_dir / "projection_rf_cf.csv"] = (
            ["rf", "cf", "merit"],
            [[space.rf_values[a], space.cf_values[b], table.merit[a, b, k]]
             for a in range(nr) for b in range(nc)])
        outputs[out_dir / "projection_rf_vd.csv"] = (
            ["rf", "vd", "merit"],
            [[space.rf_values[a], space.vd_values[c], table.merit[a, j, c]]
             for a in range(nr) for c in range(nv)])
        outputs[out_dir / "projection_cf_vd.csv"] = (
            ["cf", "vd", "merit"],
            [[space.cf_values[b], space.vd_values[c], table.merit[i, b, c]]
             for b in range(nc) for c in range(nv)])

    if cfg.output["write_grid"]:
        nr, nc, nv = space.shape
        rows = []
        for a in range(nr):
            for b in range(nc):
                for c in range(nv):
                    rows.append([space.rf_values[a], space.cf_values[b],
                                 space.vd_values[c],
                                 table.snr_db[a, b, c],
                                 table.bandwidth_hz[a, b, c],
                                 table.phase_margin_deg[a, b, c],
                                 table.m_snr[a, b, c],
                                 table.m_bandwidth[a, b, c],
                                 table.m_phase[a, b, c],
                                 table.merit[a, b, c]])
        outputs[out_dir / "grid.csv"] = (
            ["rf", "cf", "vd", "snr_db", "bandwidth_hz", "phase_margin_deg",
             "m_snr", "m_bandwidth", "m_phase", "merit"], rows)

    summary = {
        "command": "systematic",
        "config": str(cfg.config_path),
        "cardinality": space.cardinality(),
        "evaluations": result.n_evaluations_actual,
        "best": best,
        "nonzero_merit_fraction": table.nonzero_fraction(),
        "elapsed_s": elapsed,
        "landscape_hash": cfg.landscape_hash,
        "space": {"n_rf": space.shape[0], "n_cf": space.shape[1],
                  "n_vd": space.shape[2]},
    }
    if calibration is not None:
        summary["calibration"] = calibration

    written = _write_all(outputs, out_dir / "summary.json", summary)
    _write_reference_cache(cfg, best, space.cardinality())
    return written


def _calibration_block(cfg: RunConfig) -> dict:
    """Model outputs at a reference design, compared against externally
    published values when targets are configured. Reported, never asserted:
    the simplified amplifier model is not expected to match datasheet-level
    simulations point for point."""
    from .merit import global_merit
    from .space import DesignPoint

    cal = cfg.calibration
    point = DesignPoint(rf=cal["rf"], cf=cal["cf"], vd=cal["vd"])
    perf = cfg.build_evaluator().evaluate(point)
    breakdown = global_merit(perf, cfg.merit_spec)
    block = {
        "rf": cal["rf"], "cf": cal["cf"], "vd": cal["vd"],
        "snr_db": perf.snr_db,
        "bandwidth_hz": perf.bandwidth_hz,
        "phase_margin_deg": perf.phase_margin_deg,
        "m_snr": breakdown.m_snr,
        "m_bandwidth": breakdown.m_bandwidth,
        "m_phase": breakdown.m_phase,
        "merit": breakdown.global_merit,
    }
    measured = {"snr_db": perf.snr_db, "bandwidth_hz": perf.bandwidth_hz,
                "phase_margin_deg": perf.phase_margin_deg,
                "merit": breakdown.global_merit}
    targets = {}
    for key, value in measured.items():
        target = cal.get(f"target_{key}")
        if target is not None:
            targets[key] = {"target": target, "model": value,
                            "difference": value - target}
    if targets:
        block["targets"] = targets
    return block


# -- search -------------------------------------------------------------------

def _make_estimator(algo: dict, seed):
    name = algo["name"]
    if name == "montecarlo":
        return MonteCarloSearch(n_mc=int(algo["n_mc"]), seed=seed)
    if name == "ga":
        extra = {}
        if "selection_floor" in algo:
            extra["selection_floor"] = float(algo["selection_floor"])
        if "init_attempt_cap" in algo:
            extra["init_attempt_cap"] = int(algo["init_attempt_cap"])
        return GeneticSearch(n_c=int(algo["n_c"]),
                             generations=int(algo["generations"]),
                             mutation_percent=float(algo["mutation_percent"]),
                             seed=seed, **extra)
    raise ConfigError(f"not a stochastic algorithm: {name}")


def cmd_search(cfg: RunConfig, out_dir: Path, seed_override) -> list:
    if cfg.algorithm is None or cfg.algorithm["name"] not in ("montecarlo",
                                                              "ga"):
        raise ConfigError("the search command needs an algorithm section "
                          "with name: montecarlo or name: ga")
    algo = cfg.algorithm
    seed = seed_override if seed_override is not None else algo.get("seed")
    if seed is not None:
        seed = int(seed)
    problem = cfg.build_landscape()
    est = _make_estimator(algo, seed)
    t0 = time.perf_counter()
    est.fit(problem)
    elapsed = time.perf_counter() - t0
    result = est.result_

    outputs = {}
    outputs[out_dir / "result.csv"] = (reporting.SEARCH_RECORD_HEADER,
                                       [reporting.search_record_row(result)])
    if result.history is not None:
        outputs[out_dir / "history.csv"] = (
            ["generation", "generation_best", "running_best"],
            [[h.generation, h.generation_best, h.running_best]
             for h in result.history])

    summary = {
        "command": "search",
        "config": str(cfg.config_path),
        "algorithm": {k: v for k, v in algo.items() if k != "seed"},
        "seed": seed,
        "best": {**_branch_values(problem.space, result.best_index),
                 "index": list(result.best_index),
                 "merit": result.best_merit,
                 "m_snr": result.breakdown.m_snr,
                 "m_bandwidth": result.breakdown.m_bandwidth,
                 "m_phase": result.breakdown.m_phase},
        "evaluations_nominal": result.n_evaluations_nominal,
        "evaluations_actual": result.n_evaluations_actual,
        "elapsed_s": elapsed,
    }
    if result.algorithm == "ga":
        summary["ga"] = {"init_attempts": est.n_init_attempts_,
                         "generations": len(result.history)}
    return _write_all(outputs, out_dir / "summary.json", summary)


# -- experiment ---------------------------------------------------------------

def _sweep_label(algo: dict) -> str:
    if algo["name"] == "montecarlo":
        return f"mc_n{int(algo['n_mc'])}"
    return (f"ga_nc{int(algo['n_c'])}_gen{int(algo['generations'])}"
            f"_mut{float(algo['mutation_percent']):g}")


def _nominal_evaluations(algo: dict) -> int:
    if algo["name"] == "montecarlo":
        return int(algo["n_mc"])
    return int(algo["n_c"]) * int(algo["generations"])


def _fit_groups(sweeps_with_stats):
    """Power-law fit inputs: Monte Carlo entries scale with n_mc; GA entries
    scale with n_c among rows sharing generations and mutation settings.
    Censored rows (eps95 = 100) carry no scaling information and are left
    out; groups with fewer than 3 uncensored rows are not fitted."""
    groups = {}
    for algo, stats in sweeps_with_stats:
        if stats.censored:
            continue
        if algo["name"] == "montecarlo":
            key = "montecarlo"
            x = int(algo["n_mc"])
        else:
            key = (f"ga_gen{int(algo['generations'])}"
                   f"_mut{float(algo['mutation_percent']):g}")
            x = int(algo["n_c"])
        groups.setdefault(key, []).append((x, stats.eps95))
    fits = {}
    for key, points in groups.items():
        if len(points) >= 3 and all(e > 0 for _, e in points):
            fits[key] = fit_power_law(points)
    return fits


def cmd_experiment(cfg: RunConfig, out_dir: Path, seed_override) -> list:
    if cfg.experiment is None:
        raise ConfigError("the experiment command needs an experiment section")
    exp = cfg.experiment
    base_seed = (int(seed_override) if seed_override is not None
                 else exp["base_seed"])

    t0 = time.perf_counter()
    cache = _load_reference_cache(cfg)
    table = cfg.build_landscape().tabulate()
    table_elapsed = time.perf_counter() - t0
    best_index = tuple(int(v) for v in table.best_index())
    best = _best_block(table, best_index)
    if cache is not None:
        reference_merit = float(cache["best"]["merit"])
        if reference_merit != best["merit"]:
            raise ConfigError(
                f"cached systematic reference ({reference_merit!r}) does not "
                f"match the recomputed landscape optimum ({best['merit']!r}); "
                f"delete {reference_cache_path(cfg.config_path)}")
        reference_source = "cache"
    else:
        reference_merit = best["merit"]
        reference_source = "recomputed"
        _write_reference_cache(cfg, best, table.space.cardinality())

    outputs = {}
    sweep_summaries = []
    sweeps_with_stats = []
    for algo in exp["sweeps"]:
        label = _sweep_label(algo)
        factory = (lambda seed, a=algo:
                   _make_estimator(a, seed).fit(table).result_)
        stats = run_experiments(factory, exp["n_runs"], base_seed,
                                reference_merit, algorithm_config=algo)
        sweeps_with_stats.append((algo, stats))

        outputs[out_dir / f"runs_{label}.csv"] = (
            ["run_index", "seed", "epsilon", "best_merit", "evaluations"],
            [[r.run_index, r.seed, r.epsilon, r.best_merit, r.evaluations]
             for r in stats.runs])

        grid = np.unique(stats.epsilons)
        outputs[out_dir / f"cumulative_{label}.csv"] = (
            ["epsilon", "fraction"],
            [[x, f] for x, f in zip(
                grid, np.searchsorted(stats.epsilons, grid, side="right")
                / stats.epsilons.size)])

        if cfg.output["near_optimal_cloud"]:
            rows = []
            for r in stats.runs:
                if not r.failed and r.epsilon <= stats.eps95:
                    i, j, k = r.best_index
                    rows.append([table.space.rf_values[i],
                                 table.space.cf_values[j],
                                 table.space.vd_values[k], r.best_merit])
            outputs[out_dir / f"cloud_{label}.csv"] = (
                ["rf", "cf", "vd", "merit"], rows)

        sweep_summaries.append({
            "label": label,
            "algorithm": algo,
            "evaluations_nominal": _nominal_evaluations(algo),
            "n_runs": stats.n_runs,
            "n_failed": stats.n_failed,
            "eps95": stats.eps95,
            "censored": stats.censored,
            "mean_evaluations_actual":
                float(np.mean([r.evaluations for r in stats.runs])),
            "elapsed_s": float(sum(r.elapsed_s for r in stats.runs)),
        })

    outputs[out_dir / "summary.csv"] = (
        ["label", "algorithm", "n_mc", "n_c", "generations",
         "mutation_percent", "evaluations_nominal", "n_runs", "n_failed",
         "eps95", "censored"],
        [[s["label"], s["algorithm"]["name"],
          s["algorithm"].get("n_mc"), s["algorithm"].get("n_c"),
          s["algorithm"].get("generations"),
          s["algorithm"].get("mutation_percent"),
          s["evaluations_nominal"], s["n_runs"], s["n_failed"], s["eps95"],
          s["censored"]] for s in sweep_summaries])

    fits = _fit_groups(sweeps_with_stats)
    if fits:
        outputs[out_dir / "fits.csv"] = (
            ["group", "beta", "log_intercept", "r_squared", "n_points"],
            [[key, fit.beta, fit.log_intercept, fit.r_squared, fit.n_points]
             for key, fit in sorted(fits.items())])

    summary = {
        "command": "experiment",
        "config": str(cfg.config_path),
        "base_seed": base_seed,
        "n_runs": exp["n_runs"],
        "reference": {"merit": reference_merit, "source": reference_source,
                      "best": best},
        "sweeps": sweep_summaries,
        "fits": {key: {"beta": fit.beta, "log_intercept": fit.log_intercept,
                       "r_squared": fit.r_squared, "n_points": fit.n_points}
                 for key, fit in sorted(fits.items())},
        "landscape_hash": cfg.landscape_hash,
        "table_elapsed_s": table_elapsed,
        "elapsed_s": time.perf_counter() - t0,
    }
    return _write_all(outputs, out_dir / "summary.json", summary)


# -- shared write/dispatch ------------------------------------------------------

def _write_all(outputs: dict, summary_path: Path, summary: dict) -> list:
    """Write every CSV, then the JSON summary listing them. Called only after
    all computation succeeded."""
    written = []
    for path, (header, rows) in outputs.items():
        reporting.write_csv(path, header, rows)
        written.append(path)
    summary["output_files"] = sorted(p.name for p in written) \
        + [summary_path.name]
    reporting.write_json(summary_path, summary)
    written.append(summary_path)
    return written


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tiaopt",
        description="Photodetector front-end design optimization: exhaustive, "
                    "Monte Carlo, and genetic search over discrete component "
                    "values, with statistical comparison tooling.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
            ("systematic", "exhaustive sweep of the configured design space"),
            ("search", "one seeded Monte Carlo or GA run"),
            ("experiment", "repeated runs with eps95 statistics and fits")]:
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, type=Path,
                         help="YAML run configuration")
        cmd.add_argument("--out", required=True, type=Path,
                         help="output directory (created if missing)")
        cmd.add_argument("--threads", type=int, default=1,
                         help="accepted for interface stability; evaluation "
                              "is vectorized in-process and output does not "
                              "depend on this value")
        cmd.add_argument("--seed", type=int, default=None,
                         help="override the configured seed (search) or "
                              "base seed (experiment)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        cfg = load_run_config(args.config)
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        if args.command == "systematic":
            written = cmd_systematic(cfg, out_dir)
        elif args.command == "search":
            written = cmd_search(cfg, out_dir, args.seed)
        else:
            written = cmd_experiment(cfg, out_dir, args.seed)
    except (ConfigError, SearchFailure, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())

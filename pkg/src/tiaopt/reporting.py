"""CSV and JSON result serialization.

CSV cells are formatted with repr() so every float round-trips exactly
(shortest representation that parses back to the same binary64 value), and
files are written with a fixed "\n" line terminator. Timing never goes into
CSV files: wall-clock values are not reproducible, so they live in the JSON
summaries only, keeping CSV outputs byte-identical across reruns of the
same seeded command.
"""

import csv
import json
from pathlib import Path

import numpy as np


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(path, header, rows) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([format_cell(v) for v in row])


def read_csv(path):
    """Returns (header, rows) with all cells as strings."""
    with Path(path).open("r", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [row for row in reader]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, Path):
        return str(obj)
    return obj


def write_json(path, obj) -> None:
    text = json.dumps(_jsonable(obj), indent=2, sort_keys=True)
    Path(path).write_text(text + "\n")


def read_json(path):
    return json.loads(Path(path).read_text())


SEARCH_RECORD_HEADER = ["algorithm", "seed", "rf", "cf", "vd",
                        "i_rf", "j_cf", "k_vd",
                        "m_snr", "m_bandwidth", "m_phase", "merit",
                        "evaluations_nominal", "evaluations_actual"]


def search_record_row(result) -> list:
    b = result.breakdown
    return [result.algorithm, result.seed,
            result.best_point.rf, result.best_point.cf, result.best_point.vd,
            result.best_index[0], result.best_index[1], result.best_index[2],
            b.m_snr if b else None, b.m_bandwidth if b else None,
            b.m_phase if b else None, result.best_merit,
            result.n_evaluations_nominal, result.n_evaluations_actual]


def parse_search_record(header, row) -> dict:
    """Inverse of search_record_row (typed), for round-trip checks."""
    types = {"algorithm": str, "seed": int,
             "i_rf": int, "j_cf": int, "k_vd": int,
             "evaluations_nominal": int, "evaluations_actual": int}
    out = {}
    for name, cell in zip(header, row):
        if cell == "":
            out[name] = None
        else:
            out[name] = types.get(name, float)(cell)
    return out

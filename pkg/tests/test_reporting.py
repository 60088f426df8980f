"""CSV and JSON serialization: exact round-trips and stable bytes."""

import json
from pathlib import Path

import numpy as np

from tiaopt import DesignPoint, SearchResult
from tiaopt.merit import MeritBreakdown
from tiaopt.reporting import (SEARCH_RECORD_HEADER, format_cell,
                              parse_search_record, read_csv, read_json,
                              search_record_row, write_csv, write_json)


def test_format_cell_mappings():
    assert format_cell(None) == ""
    assert format_cell(True) == "true"
    assert format_cell(False) == "false"
    assert format_cell(np.bool_(True)) == "true"
    assert format_cell(7) == "7"
    assert format_cell(np.int64(-3)) == "-3"
    assert format_cell(0.5) == "0.5"
    assert format_cell(np.float64(1.0) / 3.0) == repr(1.0 / 3.0)
    assert format_cell("plain") == "plain"


def test_write_csv_golden_bytes(tmp_path):
    path = tmp_path / "golden.csv"
    write_csv(path, ["a", "b"], [[1, 0.5], [None, "x"]])
    assert path.read_bytes() == b"a,b\n1,0.5\n,x\n"


def test_write_csv_quotes_commas(tmp_path):
    path = tmp_path / "quoted.csv"
    write_csv(path, ["label"], [["hello, world"]])
    assert path.read_bytes() == b'label\n"hello, world"\n'
    header, rows = read_csv(path)
    assert header == ["label"]
    assert rows == [["hello, world"]]


def test_float_cells_round_trip_exactly(tmp_path):
    values = [1.0 / 3.0, 0.1, 1e-17, 9.87e300, -0.0, 4096.000000000001,
              float(np.nextafter(1.0, 2.0))]
    path = tmp_path / "floats.csv"
    write_csv(path, ["v"], [[v] for v in values])
    _, rows = read_csv(path)
    got = [float(row[0]) for row in rows]
    assert got == values


def test_read_csv_returns_strings(tmp_path):
    path = tmp_path / "t.csv"
    write_csv(path, ["a", "b"], [[1, 2.5]])
    header, rows = read_csv(path)
    assert header == ["a", "b"]
    assert rows == [["1", "2.5"]]


def test_write_json_sorted_keys_and_conversions(tmp_path):
    path = tmp_path / "t.json"
    write_json(path, {"b": np.float64(0.5), "a": [np.int64(2), (1, 2)],
                      "p": Path("/somewhere"), "flag": np.bool_(False),
                      "arr": np.arange(3)})
    text = path.read_text()
    assert text.endswith("}\n")
    assert text.index('"a"') < text.index('"arr"') < text.index('"b"')
    loaded = json.loads(text)
    assert loaded == {"a": [2, [1, 2]], "arr": [0, 1, 2], "b": 0.5,
                      "flag": False, "p": "/somewhere"}
    assert read_json(path) == loaded


def make_result(seed, breakdown):
    return SearchResult(algorithm="montecarlo", best_index=(3, 1, 2),
                        best_point=DesignPoint(9.1e5, 2.7e-12, 14.79),
                        best_merit=0.8125, breakdown=breakdown,
                        n_evaluations_nominal=1000,
                        n_evaluations_actual=1234, seed=seed, elapsed_s=0.5)


def test_search_record_round_trip(tmp_path):
    breakdown = MeritBreakdown(m_snr=0.9338, m_bandwidth=1.0, m_phase=0.87,
                               global_merit=0.8124060000000001)
    result = make_result(42, breakdown)
    path = tmp_path / "record.csv"
    write_csv(path, SEARCH_RECORD_HEADER, [search_record_row(result)])
    header, rows = read_csv(path)
    assert header == SEARCH_RECORD_HEADER
    parsed = parse_search_record(header, rows[0])
    assert parsed == {
        "algorithm": "montecarlo", "seed": 42,
        "rf": 9.1e5, "cf": 2.7e-12, "vd": 14.79,
        "i_rf": 3, "j_cf": 1, "k_vd": 2,
        "m_snr": 0.9338, "m_bandwidth": 1.0, "m_phase": 0.87,
        "merit": 0.8125, "evaluations_nominal": 1000,
        "evaluations_actual": 1234}


def test_search_record_none_fields_stay_none(tmp_path):
    result = make_result(None, None)
    row = [format_cell(v) for v in search_record_row(result)]
    parsed = parse_search_record(SEARCH_RECORD_HEADER, row)
    assert parsed["seed"] is None
    assert parsed["m_snr"] is None
    assert parsed["m_bandwidth"] is None
    assert parsed["m_phase"] is None
    assert parsed["merit"] == 0.8125

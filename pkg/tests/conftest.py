"""Shared fixtures.

The 72-cube example landscape takes ~15 s to tabulate, so it is built once
per session and reused by the model property tests and the acceptance
checklist. The acceptance recorder collects one PASS/FAIL line per criterion
and prints the checklist in the terminal summary.
"""

import shutil
import time
from pathlib import Path

import pytest

from tiaopt import load_run_config

REPO_ROOT = Path(__file__).resolve().parent.parent

_TIMINGS = {}
_ACCEPTANCE_LINES = {}


@pytest.fixture(scope="session")
def repo_root() -> Path:
    return REPO_ROOT


@pytest.fixture(scope="session")
def example_config():
    return load_run_config(REPO_ROOT / "configs" / "example.yaml")


@pytest.fixture(scope="session")
def example_table(example_config):
    t0 = time.perf_counter()
    table = example_config.build_landscape().tabulate()
    _TIMINGS["example_tabulation_s"] = time.perf_counter() - t0
    return table


@pytest.fixture(scope="session")
def tabulation_timings() -> dict:
    return _TIMINGS


@pytest.fixture(scope="session")
def reference_merit(example_table) -> float:
    return example_table.max_merit()


def _stage(root: Path) -> Path:
    shutil.copytree(REPO_ROOT / "configs", root / "configs")
    shutil.copytree(REPO_ROOT / "fixtures", root / "fixtures")
    return root


@pytest.fixture()
def staged_repo(tmp_path) -> Path:
    """Copy of configs/ and fixtures/ so CLI runs never touch the repo
    (the reference cache is written next to the config file)."""
    return _stage(tmp_path)


@pytest.fixture(scope="session")
def staged_repo_session(tmp_path_factory) -> Path:
    return _stage(tmp_path_factory.mktemp("staged"))


@pytest.fixture(scope="session")
def acceptance():
    """Record one criterion outcome, then assert it."""
    def record(number: int, description: str, passed, detail: str = ""):
        _ACCEPTANCE_LINES[number] = (description, bool(passed), detail)
        assert passed, f"criterion {number} failed: {description} [{detail}]"
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE_LINES):
        description, passed, detail = _ACCEPTANCE_LINES[number]
        line = f"[{'PASS' if passed else 'FAIL'}] {number:2d}. {description}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)

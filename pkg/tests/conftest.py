from __future__ import annotations

import pytest

from twistmoment.config import RunConfig
from twistmoment.eigenform import build_table, load_table


@pytest.fixture(scope="session")
def config() -> RunConfig:
    return RunConfig()


@pytest.fixture(scope="session")
def table(config):
    """Full-size table; built once and cached on disk."""
    return load_table(config.weight, config.table_limit, config.cache())


@pytest.fixture(scope="session")
def small_table():
    return build_table(18, 3000)


ACCEPTANCE_LINES: dict[int, str] = {}


def record_acceptance(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])

from __future__ import annotations

import os

import pytest

import _acceptance


def pytest_addoption(parser):
    parser.addoption("--full", action="store_true", default=False,
                     help="also run opt-in acceptance checks (sequence value at n = 6)")


@pytest.fixture
def full_run(request) -> bool:
    return request.config.getoption("--full") or os.environ.get("PERMSANDPILE_FULL") == "1"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_acceptance.RESULTS):
        passed, title, detail = _acceptance.RESULTS[k]
        line = f"criterion {k} [{title}]: {'PASS' if passed else 'FAIL'}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))

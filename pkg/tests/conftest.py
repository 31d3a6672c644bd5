import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

# criterion number -> (title, passed) filled in by test_acceptance.py
ACCEPTANCE_RESULTS: dict = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = "test_acceptance.py::test_criterion_"
    if marker not in report.nodeid:
        return
    name = report.nodeid.split(marker, 1)[1]
    num = int(name.split("_", 1)[0])
    ACCEPTANCE_RESULTS[num] = (name, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        name, ok = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {name}")

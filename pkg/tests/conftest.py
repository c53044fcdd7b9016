import re

import pytest

_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
        if m:
            _acceptance[int(m.group(1))] = (m.group(2), report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_acceptance):
        name, outcome = _acceptance[num]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} {name:<28} {status}")


@pytest.fixture
def running_example():
    from carrymix.bijections import ColumnArray
    return ColumnArray(((0, 1, 2), (0, 1, 2), (1, 1, 2), (1, 1, 1), (2, 1, 2), (1, 2, 1)), 3)


@pytest.fixture
def star_example():
    from carrymix.bijections import ColumnArray
    return ColumnArray(((1, 2, 2), (1, 2, 1), (2, 0, 0), (0, 0, 1), (2, 1, 0), (0, 1, 1)), 3)

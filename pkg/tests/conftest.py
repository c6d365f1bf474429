import json
from pathlib import Path

import pytest

from abgrad import QQ, SimpleExtension, catalog_load

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")
    config._criteria = {}


def pytest_runtest_logreport(report):
    item_marks = getattr(report, "_criterion", None)
    if item_marks is None:
        return
    n, title = item_marks
    table = report.config_criteria
    ok = report.passed if report.when == "call" else not report.failed
    prev = table.get(n, (title, True))
    table[n] = (title, prev[1] and ok)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report._criterion = tuple(mark.args)
        report.config_criteria = item.config._criteria


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    table = getattr(config, "_criteria", {})
    if not table:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(table):
        title, ok = table[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def oracle():
    return json.loads((HERE / "oracles" / "frozen.json").read_text())


@pytest.fixture(scope="session")
def QS2():
    return SimpleExtension(QQ, [QQ(-2), QQ(0), QQ(1)], name="s")


@pytest.fixture(scope="session")
def QI():
    return SimpleExtension(QQ, [QQ(1), QQ(0), QQ(1)], name="i")


@pytest.fixture(scope="session")
def sl2():
    return catalog_load("sl2")


@pytest.fixture(scope="session")
def m2():
    return catalog_load("m2")

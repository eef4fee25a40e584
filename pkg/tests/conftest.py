import numpy as np
import pytest

from entwit import statezoo

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion this test checks")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _criteria.setdefault(m.args[0], {"title": m.args[1], "outcomes": []})


def pytest_runtest_makereport(item, call):
    m = item.get_closest_marker("criterion")
    if m is not None and call.when == "call":
        _criteria[m.args[0]]["outcomes"].append((item.name, call.excinfo is None))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_criteria, key=lambda k: int(k)):
        c = _criteria[num]
        if not c["outcomes"]:
            continue
        ok = all(o for _, o in c["outcomes"])
        failed = [n for n, o in c["outcomes"] if not o]
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {c['title']}"
        if failed:
            line += "  (failing: " + ", ".join(failed) + ")"
        tr.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


@pytest.fixture(scope="session")
def bes():
    return statezoo.bes_4x4()

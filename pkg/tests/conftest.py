import pytest

from scx.complex import build_complex

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion")


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        marker = getattr(report, "_acceptance", None)
        if marker:
            prev = _ACCEPTANCE.get(marker, "PASS")
            _ACCEPTANCE[marker] = "PASS" if prev == "PASS" and report.passed else "FAIL"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = item.get_closest_marker("acceptance")
    if m:
        report._acceptance = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), status in sorted(_ACCEPTANCE.items()):
        terminalreporter.write_line(f"[{status}] criterion {num}: {title}")


@pytest.fixture
def k3():
    return build_complex([1, 2, 3], [(1, 2), (1, 3), (2, 3)], [(1, 2, 3)])


@pytest.fixture
def bridged_pair():
    """Filled {1,2,3} and {4,5,6} joined by the single edge {3,4}."""
    edges = [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (3, 4)]
    return build_complex(range(1, 7), edges, [(1, 2, 3), (4, 5, 6)])


@pytest.fixture
def fan():
    """Filled {1,2,3} and {3,4,5} sharing node 3."""
    return build_complex(range(1, 6), auto_close=True, triangles=[(1, 2, 3), (3, 4, 5)])

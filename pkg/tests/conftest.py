import pytest

_results: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number checked by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not report.failed:
        return
    crit = getattr(report, "criterion", None)
    if crit is not None:
        _results.setdefault(crit, []).append(report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_results):
        ok = all(_results[crit])
        terminalreporter.write_line(f"criterion {crit:>2}: {'PASS' if ok else 'FAIL'}")

from __future__ import annotations

import pytest

_RESULTS: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config.addinivalue_line("markers", "slow: takes more than a few seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call":
        _RESULTS[number] = ("PASS" if report.passed else "FAIL", title, report.duration)
    elif report.when == "setup" and report.skipped:
        _RESULTS[number] = ("SKIP", title, 0.0)
    elif report.when == "setup" and report.failed:
        _RESULTS[number] = ("FAIL", title, 0.0)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        status, title, seconds = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  ({seconds:6.2f} s)  {title}")

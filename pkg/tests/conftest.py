from __future__ import annotations

import pytest

_acceptance_results: list[tuple[int, str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and report.when == "call":
        status = "PASS" if report.passed else "FAIL"
        _acceptance_results.append(
            (marker.kwargs.get("criterion", 0), marker.kwargs.get("title", item.name), status)
        )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for criterion, title, status in sorted(_acceptance_results):
        terminalreporter.write_line(f"criterion {criterion}: {status} - {title}")

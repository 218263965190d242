"""Shared pytest configuration.

Tests in test_acceptance.py carry an ``acceptance`` marker with a short
label; after the run a summary section prints one PASS/FAIL line per
criterion so the whole contract can be scanned at a glance.
"""

import pytest

_acceptance_reports = []


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "acceptance(label): end-to-end acceptance check, listed in the "
        "summary section with the given label",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None and report.when == "call":
        report.acceptance_label = marker.args[0] if marker.args else item.name
        _acceptance_reports.append(report)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_reports:
        return
    terminalreporter.section("acceptance criteria")
    for report in _acceptance_reports:
        status = "PASS" if report.passed else "FAIL"
        terminalreporter.write_line(f"{status}  {report.acceptance_label}")

"""Shared pytest wiring: the acceptance-criterion summary section.

Tests marked ``criterion(order, text)`` get one PASS/FAIL line each at
the end of the run, so the gate's verdict is readable without scrolling
through the full test list.
"""

from __future__ import annotations

import pytest


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "criterion(order, text): acceptance criterion the test demonstrates; "
        "summarized as one PASS/FAIL line per criterion",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = marker.args


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    verdicts: dict[tuple, bool] = {}
    for reports in terminalreporter.stats.values():
        for report in reports:
            key = getattr(report, "criterion", None)
            if key is None:
                continue
            key = tuple(key)
            ok = not (report.failed or report.skipped)
            verdicts[key] = verdicts.get(key, True) and ok
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for order, text in sorted(verdicts):
        verdict = "PASS" if verdicts[(order, text)] else "FAIL"
        terminalreporter.write_line(f"{verdict}  {order}. {text}")

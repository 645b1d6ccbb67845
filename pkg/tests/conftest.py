"""Terminal summary listing each acceptance criterion with its outcome."""

from __future__ import annotations

_acceptance: dict[str, tuple[str, float]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call":
        _acceptance[name] = (report.outcome, report.duration)
    elif report.when == "setup" and report.outcome != "passed":
        _acceptance[name] = (report.outcome, 0.0)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        outcome, duration = _acceptance[name]
        status = {"passed": "PASS", "failed": "FAIL"}.get(outcome,
                                                          outcome.upper())
        terminalreporter.write_line(f"{status}  {name}  ({duration:.1f}s)")

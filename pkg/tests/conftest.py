"""Shared test plumbing: the acceptance summary printed after the run.

test_acceptance.py registers one line per criterion through the record
fixture; the terminal summary hook prints them all, pass or fail, so the
verdict of every criterion is visible in one block even when an
assertion stopped a test early.
"""

import pytest

_ACCEPTANCE: list[tuple[int, str, bool, str]] = []


def record_criterion(number: int, title: str, passed: bool, detail: str):
    _ACCEPTANCE.append((number, title, bool(passed), detail))


@pytest.fixture
def record():
    return record_criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_ACCEPTANCE):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(
            f"criterion {number:2d} [{status}] {title}: {detail}"
        )

"""Shared fixtures and the acceptance-criteria summary reporter.

Tests marked @pytest.mark.criterion(n, "description") get one
criterion-n PASS/FAIL line in the terminal summary, so the acceptance
suite reads as a checklist.
"""

import pytest

_ACCEPTANCE: dict[int, tuple[str, bool]] = {}
_NOTES: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "criterion(num, description): acceptance criterion with a summary line",
    )


@pytest.fixture
def acceptance_note():
    """Attach measured detail to a criterion's summary line."""

    def note(num: int, text: str):
        _NOTES[num] = text

    return note


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when != "call":
        return
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        num, description = marker.args
        _ACCEPTANCE[num] = (description, rep.passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        description, passed = _ACCEPTANCE[num]
        status = "PASS" if passed else "FAIL"
        note = f" [{_NOTES[num]}]" if num in _NOTES else ""
        terminalreporter.write_line(f"criterion {num:2d} {status}: {description}{note}")

"""Shared pytest plumbing.

The acceptance tests report one human-readable line per criterion.
Those lines are printed as they happen (visible with ``-s``) and also
collected here so a normal captured run still shows them in a summary
section at the end.
"""

import pytest

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_report():
    def report(line: str) -> None:
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return report


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE_LINES:
        terminalreporter.write_line(line)

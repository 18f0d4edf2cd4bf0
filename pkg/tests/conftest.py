"""Shared pytest hooks.

Acceptance tests append one line each to ``ACCEPTANCE_LINES``; the lines are
repeated in the terminal summary so they survive output capturing.
"""
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

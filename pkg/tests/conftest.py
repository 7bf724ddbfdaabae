import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion; re-raise on failure."""

    def check(number, label, body):
        try:
            detail = body()
        except AssertionError as exc:
            line = f"FAIL criterion {number}: {label} ({str(exc).splitlines()[0]})"
            print(line)
            ACCEPTANCE_LINES.append(line)
            raise
        line = f"PASS criterion {number}: {label}" + (f" ({detail})" if detail else "")
        print(line)
        ACCEPTANCE_LINES.append(line)

    return check


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)

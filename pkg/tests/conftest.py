import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def record_acceptance():
    def rec(line):
        ACCEPTANCE_LINES.append(line)
        print(line)
    return rec


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

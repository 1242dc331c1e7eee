import pytest

_criterion_lines: list[str] = []


@pytest.fixture(scope="session")
def criterion_report():
    """Recorder for per-criterion PASS/FAIL lines, replayed after the run."""
    return _criterion_lines.append


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)

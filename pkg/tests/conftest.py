import pytest

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)


@pytest.fixture
def report_criterion():
    def report(result, seconds):
        line = (f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.measured} "
                f"(target {result.target}; {seconds:.2f}s)")
        ACCEPTANCE_LINES.append(line)
        print(line)
    return report

import pytest

ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


@pytest.fixture
def record_criterion():
    def record(number: int, ok: bool, summary: str, seconds: float):
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {summary}  ({seconds:.1f}s)"
        ACCEPTANCE_LINES[number] = line
        print(line)
        return ok

    return record

import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def record_criterion():
    def record(number, title, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] criterion {number}: {title}"
        ACCEPTANCE_LINES.append(line + (f" ({detail})" if detail else ""))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)

"""Collects one verdict line per acceptance criterion and prints them at the end."""
import pytest

VERDICTS = []


@pytest.fixture
def verdict(request):
    """Call with (ok, detail); records a PASS/FAIL line named after the test."""
    name = request.node.name

    def record(ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
        VERDICTS.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)

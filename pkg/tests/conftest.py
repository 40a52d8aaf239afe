import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria = {}


@pytest.fixture
def criterion(request):
    """Record a named acceptance criterion; the summary prints one line each."""

    def record(name, passed, detail=""):
        _criteria[name] = (bool(passed), detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda s: int(s.split()[0])):
        ok, detail = _criteria[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {name}  {detail}")

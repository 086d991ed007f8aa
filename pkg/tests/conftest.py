import pytest

_ACCEPTANCE = {}


@pytest.fixture
def record_criterion():
    """Record ``(criterion, status, detail)`` for the end-of-run acceptance table."""

    def record(key, status, detail=""):
        _ACCEPTANCE[key] = (status, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: (int(k.split()[0][1:]), k)):
        status, detail = _ACCEPTANCE[key]
        terminalreporter.write_line(f"{key:<48} {status:<14} {detail}")

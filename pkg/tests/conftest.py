import pytest

# acceptance criterion -> (passed, message); filled in by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {msg}")


@pytest.fixture
def record():
    def _record(n, ok, msg):
        ACCEPTANCE[n] = (bool(ok), msg)
        print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {msg}")
        return ok

    return _record

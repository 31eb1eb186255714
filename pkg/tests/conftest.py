import pytest

ACCEPTANCE: dict = {}


@pytest.fixture
def record():
    def rec(n: int, ok: bool, text: str):
        ACCEPTANCE[n] = (ok, text)
        return ok
    return rec


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2}: {'PASS' if ok else 'FAIL'}  {text}")

import pytest

# criterion number -> (name, passed, note), filled by test_acceptance.py
ACCEPTANCE: dict = {}


@pytest.fixture
def acceptance():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE):
        name, passed, note = ACCEPTANCE[cid]
        terminalreporter.write_line(f"criterion {cid:2d} {name:<20} {'PASS' if passed else 'FAIL'}  {note}")

import pytest

# criterion number -> (passed, detail), filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture
def record():
    def _record(number, checks):
        """``checks`` is a list of ``(label, ok)``; stores the outcome and returns failed labels."""
        failed = [label for label, ok in checks if not ok]
        detail = "; ".join(f"{label} {'ok' if ok else 'FAILED'}" for label, ok in checks)
        ACCEPTANCE[number] = (not failed, detail)
        print(f"criterion {number}: {'PASS' if not failed else 'FAIL'}  {detail}")
        return failed

    return _record

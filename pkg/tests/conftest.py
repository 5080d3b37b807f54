import numpy as np
import pytest

_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20191017)


@pytest.fixture
def record_criterion():
    """Store a pass/fail line for the acceptance summary."""

    def record(name: str, passed: bool, detail: str = "") -> None:
        _ACCEPTANCE[name] = (passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split(".")[0])):
        passed, detail = _ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")

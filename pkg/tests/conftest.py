import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def ket(*amps):
    return np.array(amps, dtype=complex)


ACCEPTANCE_LINES: list[str] = []


def record(criterion, passed: bool, detail: str) -> None:
    line = f"criterion {str(criterion):>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda x: (int(x[10:12].strip().rstrip('b') or 0), x)):
            terminalreporter.write_line(line)

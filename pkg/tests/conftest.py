import pytest

from rigidpadic.padic import PadicContext

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def ctx() -> PadicContext:
    return PadicContext()


@pytest.fixture(scope="session")
def small_ctx() -> PadicContext:
    # shallow precision exposes truncation behaviour quickly
    return PadicContext(p=5, N=6, D=16)


@pytest.fixture(scope="session")
def acceptance_log() -> list:
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

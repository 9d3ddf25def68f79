import pytest

from lsmimo_secrecy.channel import SystemParams
from lsmimo_secrecy.montecarlo import draw_stats

ACCEPTANCE_LINES = []


@pytest.fixture
def defaults():
    """Symmetric operating point: 100 antennas, 10 kHz, rho=0.9, 20 dB at source and relay."""
    return SystemParams()


@pytest.fixture(scope="session")
def stats_2e5():
    # seed 1 here; the acceptance module draws its own seed-0 sets
    return draw_stats(100, 200_000, seed=1)


@pytest.fixture(scope="session")
def stats_1e4():
    return draw_stats(100, 10_000, seed=2)


@pytest.fixture
def record():
    def _record(criterion, ok, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {criterion}  {detail}")
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

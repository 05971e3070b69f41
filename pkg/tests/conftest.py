import numpy as np
import pytest

from kemeny_stats.data import embedded_sleep

# One line per acceptance criterion, filled in by test_acceptance.py and echoed
# at the end of the run so that the verdicts appear in the captured log.
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def sleep():
    ds = embedded_sleep()
    return ds["extra"], ds["group"]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])

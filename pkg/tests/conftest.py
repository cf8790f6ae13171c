import pytest

from negbeta.acceptance import context

TEST_SET = ["minus2", "neg_gamma0", "example1", "example2", "minus1.3"]


@pytest.fixture(scope="session")
def ctx():
    """Cached (spec, bounds, regime, code) lookups by bundled name."""
    return context


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)

import pytest

from wtq import WaveletTree

FIG1 = [6, 2, 0, 7, 9, 3, 1, 8, 5, 4]
ABRA = [ord(c) for c in "abracadabra"]
CORPUS = [b"abracadabra", b"bandana", b"cab"]


@pytest.fixture
def fig1_tree():
    return WaveletTree(FIG1)


@pytest.fixture
def abra_tree():
    return WaveletTree(ABRA)


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

import pathlib

import pytest

from weakind import tables

DATA = pathlib.Path(__file__).parent / "data"


def load_fixture(name):
    return tables.load_table((DATA / name).read_text())


@pytest.fixture(scope="session")
def csi_cpt():
    """CPT where X and {Z,W} are strongly independent given Y=0 but not Y=1."""
    return load_fixture("csi_cpt.json")


@pytest.fixture(scope="session")
def cwi_cpt():
    """CPT where X and {Z,W} are weakly independent given Y=0 but not Y=1."""
    return load_fixture("cwi_cpt.json")


@pytest.fixture(scope="session")
def wi_cpt():
    """CPT where X and {Z,W} are weakly but not strongly independent given Y."""
    return load_fixture("wi_cpt.json")


@pytest.fixture(scope="session")
def nest_demo():
    """Joint distribution whose {A2,A3}-coarsening is a worked example."""
    return load_fixture("nest_demo.json")


@pytest.fixture(scope="session")
def noncommuting():
    """Joint distribution whose two coarsening orders disagree."""
    return load_fixture("noncommuting.json")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

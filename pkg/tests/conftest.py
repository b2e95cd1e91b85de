from __future__ import annotations

import pytest

from codegree_bound.core import Hypergraph3
from codegree_bound.designs import construct_sts

FANO_TRIPLES = ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5))


@pytest.fixture
def fano() -> Hypergraph3:
    return Hypergraph3(7, FANO_TRIPLES)


@pytest.fixture
def sts7_graph() -> Hypergraph3:
    return construct_sts(7).as_hypergraph()


ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_log(pytestconfig) -> list[str]:
    return pytestconfig.stash.setdefault(ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)

from __future__ import annotations

import pytest

from specsub.graph import complete_bipartite_graph, complete_graph, cycle_graph, path_graph

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def k3():
    return complete_graph(3)


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def p2():
    return path_graph(2)


@pytest.fixture
def k23():
    return complete_bipartite_graph(2, 3)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        ok, text = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {text}")

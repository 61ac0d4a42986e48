import numpy as np
import pytest

from fasclique.tournament import Tournament, from_bits


def tournament_from_edges(part_sizes, edges):
    """Build a tournament from an explicit arc list; missing cross pairs point low -> high."""
    n = sum(part_sizes)
    vp = np.repeat(np.arange(len(part_sizes)), part_sizes)
    orient = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        for j in range(i + 1, n):
            if vp[i] != vp[j]:
                orient[i, j] = 1
    for u, v in edges:
        orient[u, v], orient[v, u] = 1, 0
    return Tournament(tuple(part_sizes), orient)


@pytest.fixture
def four_cycle():
    # 0 -> 3 -> 1 -> 2 -> 0, parts {0, 1} and {2, 3}
    return tournament_from_edges((2, 2), [(0, 3), (3, 1), (1, 2), (2, 0)])


@pytest.fixture
def three_cycle():
    return tournament_from_edges((1, 1, 1), [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def transitive_k3():
    return from_bits((2, 2, 2), np.ones(12, dtype=np.uint8))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance gate")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

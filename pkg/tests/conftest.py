import numpy as np
import pytest

from cspath import Graph


@pytest.fixture
def two_route():
    """Two parallel s-t routes via intermediates: (cost, length) = (1, 5)
    and (4, 2); s = 0, t = 1."""
    return Graph.from_arcs(4, [0, 2, 0, 3], [2, 1, 3, 1], [1, 0, 4, 0], [5, 0, 2, 0])


@pytest.fixture
def diamond_dag():
    """s->a, s->b, a->b, b->t with unit costs and lengths 2."""
    return Graph.from_arcs(4, [0, 0, 1, 2], [1, 2, 2, 3], [1, 1, 1, 1], [2, 2, 2, 2])


def undirected(n, edges, coords=None):
    """Each (u, v, a, b) edge becomes two opposite arcs."""
    tails, heads, costs, lengths = [], [], [], []
    for u, v, a, b in edges:
        tails += [u, v]
        heads += [v, u]
        costs += [a, a]
        lengths += [b, b]
    return Graph.from_arcs(n, tails, heads, costs, lengths, coords=coords)


def path_graph(n, a=1, b=1):
    """Undirected path 0 - 1 - ... - n-1 with uniform weights."""
    return undirected(n, [(i, i + 1, a, b) for i in range(n - 1)])


def complete_graph(n, a=1, b=1):
    edges = [(i, j, a, b) for i in range(n) for j in range(i + 1, n)]
    return undirected(n, edges)

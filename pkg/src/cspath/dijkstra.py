"""Exact single-source min-weight paths under aggregated arc weights.

The aggregated weight of an arc is c(alpha) = cost + alpha * length with
alpha a non-negative exact rational p/q. Internally every run works on the
integer-scaled weight w = cost*q + length*p (all comparisons are therefore
exact; dividing by q recovers c). A compiled int64 kernel is used whenever
a conservative overflow bound holds, otherwise a pure-Python big-int heap
takes over, so results are exact at any scale.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .graph import Graph, Path

INF = 1 << 62  # int64 sentinel for the compiled kernels


@dataclass(frozen=True)
class WeightView:
    """Aggregated arc weights c(alpha) = cost + alpha * length.

    alpha is stored as an exact rational so that breakpoint values such as
    (a2 - a1) / (b1 - b2) are representable exactly.
    """

    alpha: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.alpha < 0:
            raise ValueError("alpha must be non-negative")

    @property
    def p(self) -> int:
        return self.alpha.numerator

    @property
    def q(self) -> int:
        return self.alpha.denominator

    def arc_weight(self, g: Graph, arc: int) -> Fraction:
        return int(g.cost[arc]) + self.alpha * int(g.length[arc])

    def path_weight(self, path: Path) -> Fraction:
        return path.cost + self.alpha * path.length


@dataclass(frozen=True)
class ShortestPathTree:
    """Distances and parent arcs from one source (or to one target).

    ``dist_scaled[v]`` is q * (true aggregated distance); unreachable
    vertices carry a sentinel (int64 INF from the kernel, math.inf from
    the big-int fallback). For reverse runs, ``parent_arc[v]`` is the
    first arc of a best path from v to the target.
    """

    source: int
    p: int
    q: int
    dist_scaled: np.ndarray | list
    parent_arc: np.ndarray | list

    def reached(self, v: int) -> bool:
        # any reached vertex except the source has a parent arc, under
        # either implementation and at any weight scale
        return v == self.source or int(self.parent_arc[v]) >= 0

    def distance(self, v: int) -> Fraction | None:
        if not self.reached(v):
            return None
        return Fraction(int(self.dist_scaled[v]), self.q)


def _shortest_scaled_py(g: Graph, src: int, p: int, q: int) -> tuple[list, list]:
    """Big-int fallback: heapq with lazy deletion, identical contract."""
    dist: list = [math.inf] * g.n
    parent = [-1] * g.n
    cost = g.cost
    length = g.length
    head = g.arc_head
    adj = g.adj_start
    dist[src] = 0
    heap = [(0, src)]
    while heap:
        w, v = heapq.heappop(heap)
        if w != dist[v]:
            continue
        for e in range(adj[v], adj[v + 1]):
            u = int(head[e])
            nw = w + int(cost[e]) * q + int(length[e]) * p
            if nw < dist[u]:
                dist[u] = nw
                parent[u] = e
                heapq.heappush(heap, (nw, u))
    return dist, parent


def shortest_scaled(
    g: Graph, src: int, p: int, q: int, force: str | None = None
) -> ShortestPathTree:
    """Run the search with raw integer multipliers (p, q); internal API.

    ``force`` pins the implementation to "kernel" or "python" for tests.
    """
    use_kernel = _kernels.NUMBA_OK and _kernels.fits_int64(
        g.n, g.max_cost, g.max_length, p, q
    )
    if force == "kernel":
        use_kernel = True
    elif force == "python":
        use_kernel = False
    if use_kernel:
        dist = np.empty(g.n, np.int64)
        parent = np.empty(g.n, np.int64)
        _kernels.dijkstra_scaled(
            g.adj_start,
            g.arc_head,
            g.cost,
            g.length,
            np.int64(p),
            np.int64(q),
            np.int64(src),
            dist,
            parent,
        )
        return ShortestPathTree(src, p, q, dist, parent)
    dist_l, parent_l = _shortest_scaled_py(g, src, p, q)
    return ShortestPathTree(src, p, q, dist_l, parent_l)


def dijkstra(g: Graph, s: int, w: WeightView, force: str | None = None) -> ShortestPathTree:
    """Min aggregated weight from s to every vertex, with parent arcs."""
    return shortest_scaled(g, s, w.p, w.q, force=force)


def _reverse_view(g: Graph) -> Graph:
    radj_start, perm = g._reverse_csr
    return Graph(
        n=g.n,
        adj_start=radj_start,
        arc_tail=g.arc_head[perm],
        arc_head=g.arc_tail[perm],
        cost=g.cost[perm],
        length=g.length[perm],
        coords=g.coords,
    )


def reverse_dijkstra(g: Graph, t: int, w: WeightView, force: str | None = None) -> ShortestPathTree:
    """Min aggregated weight from every vertex to t (search on reversed arcs).

    parent_arc[v] is the original arc id leaving v on a best v-to-t path.
    """
    rg = _reverse_view(g)
    _, perm = g._reverse_csr
    tree = shortest_scaled(rg, t, w.p, w.q, force=force)
    parent = tree.parent_arc
    if isinstance(parent, list):
        mapped = [int(perm[a]) if a >= 0 else -1 for a in parent]
    else:
        mapped = np.where(parent >= 0, perm[np.clip(parent, 0, None)], -1)
    return ShortestPathTree(t, tree.p, tree.q, tree.dist_scaled, mapped)


def extract_path(g: Graph, tree: ShortestPathTree, t: int) -> Path | None:
    """Walk parent arcs back from t; None when t is unreachable."""
    if not tree.reached(t):
        return None
    arcs: list[int] = []
    v = t
    while v != tree.source:
        e = int(tree.parent_arc[v])
        arcs.append(e)
        v = int(g.arc_tail[e])
    arcs.reverse()
    return Path.from_arcs(g, arcs, source=tree.source)


# Lexicographic regimes used by the alpha search bootstrap: a min-cost
# probe breaking ties toward short length, and a min-length probe breaking
# ties toward low cost. Both reuse the scaled machinery with a multiplier
# large enough that the secondary criterion can never override the primary.


def min_cost_tree(g: Graph, s: int, force: str | None = None) -> ShortestPathTree:
    big = g.max_length * max(g.n - 1, 1) + 1
    return shortest_scaled(g, s, 1, big, force=force)


def min_length_tree(g: Graph, s: int, force: str | None = None) -> ShortestPathTree:
    big = g.max_cost * max(g.n - 1, 1) + 1
    return shortest_scaled(g, s, big, 1, force=force)

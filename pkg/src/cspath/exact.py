"""Exact constrained-shortest-path oracle via Pareto label setting.

Labels (cost-so-far, length-so-far) pop in lexicographic order, so a label
is dominated exactly when an earlier label at the same vertex had length
no larger; the per-vertex frontier reduces to the best length seen.
Infeasibility pruning drops labels that cannot finish within the budget
(length so far plus the min length to the target, from one reverse run).
Intended as trustworthy ground truth where the frontier is tractable; past
the label budget it raises rather than approximate.
"""
from __future__ import annotations

import heapq
import math

from .dijkstra import WeightView, reverse_dijkstra
from .errors import OracleOverflowError
from .graph import Graph, Path

_ZERO = WeightView(0)


def exact_csp(
    g: Graph,
    s: int,
    t: int,
    beta: int,
    label_budget: int = 10_000_000,
) -> Path | None:
    """Min-cost s-t path with length at most beta, or None when impossible.

    The answer is exact; OracleOverflowError signals an exhausted label
    budget (never a silently wrong result).
    """
    if s == t:
        raise ValueError("source and target must differ")
    if beta < 0:
        raise ValueError("length budget must be non-negative")
    # min length from every vertex to t (for infeasibility pruning), computed
    # by a reverse run with the weight roles swapped
    swapped = Graph(
        n=g.n,
        adj_start=g.adj_start,
        arc_tail=g.arc_tail,
        arc_head=g.arc_head,
        cost=g.length,
        length=g.cost,
        coords=g.coords,
    )
    min_len_to_t = reverse_dijkstra(swapped, t, _ZERO)
    if not min_len_to_t.reached(s):
        return None
    if int(min_len_to_t.dist_scaled[s]) > beta:
        return None

    best_len: list = [math.inf] * g.n  # shortest length among accepted labels, per vertex
    # accepted labels: parallel lists (vertex, parent accepted idx, arc)
    lab_vertex: list[int] = []
    lab_parent: list[int] = []
    lab_arc: list[int] = []
    heap: list[tuple[int, int, int, int, int]] = []  # cost, length, vertex, parent, arc
    heapq.heappush(heap, (0, 0, s, -1, -1))
    created = 1
    adj = g.adj_start
    head = g.arc_head
    cost = g.cost
    length = g.length
    while heap:
        c, l, v, parent, arc = heapq.heappop(heap)
        if l >= best_len[v]:
            continue  # dominated: an earlier label had cost <= c and length <= l
        best_len[v] = l
        lab_vertex.append(v)
        lab_parent.append(parent)
        lab_arc.append(arc)
        me = len(lab_vertex) - 1
        if v == t:
            arcs: list[int] = []
            i = me
            while lab_arc[i] >= 0:
                arcs.append(lab_arc[i])
                i = lab_parent[i]
            arcs.reverse()
            return Path.from_arcs(g, arcs, source=s)
        for e in range(adj[v], adj[v + 1]):
            u = int(head[e])
            nl = l + int(length[e])
            if not min_len_to_t.reached(u):
                continue
            if nl + int(min_len_to_t.dist_scaled[u]) > beta:
                continue  # cannot finish within budget
            nc = c + int(cost[e])
            if nl >= best_len[u]:
                continue
            created += 1
            if created > label_budget:
                raise OracleOverflowError(
                    f"label budget {label_budget} exceeded; raise it or shrink the instance"
                )
            heapq.heappush(heap, (nc, nl, u, me, e))
    return None

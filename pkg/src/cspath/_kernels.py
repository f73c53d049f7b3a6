"""Compiled inner loops (numba).

Every kernel works on int64 scaled weights w = cost*q + length*p, which is
exact as long as the caller has checked the overflow guard (see
`fits_int64`). Callers fall back to the pure-Python big-int code paths in
`dijkstra`/`hs` when the guard fails or numba is unavailable.
"""
from __future__ import annotations

import numpy as np

INF = np.int64(1) << np.int64(62)

try:
    from numba import njit

    NUMBA_OK = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_OK = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


def fits_int64(max_arcs_on_path: int, max_cost: int, max_length: int, p: int, q: int) -> bool:
    """True when every path's scaled weight provably fits below the INF sentinel."""
    per_arc = max_cost * q + max_length * p
    return max_arcs_on_path * per_arc < (1 << 62)


@njit(cache=True)
def bfs_hops(adj_start, arc_head, src, hop):
    """Fill hop[] with BFS arc-count distance from src (-1 unreachable)."""
    n = hop.shape[0]
    for i in range(n):
        hop[i] = -1
    queue = np.empty(n, np.int64)
    hop[src] = 0
    queue[0] = src
    qh, qt = 0, 1
    while qh < qt:
        v = queue[qh]
        qh += 1
        hv = hop[v]
        for e in range(adj_start[v], adj_start[v + 1]):
            u = arc_head[e]
            if hop[u] < 0:
                hop[u] = hv + 1
                queue[qt] = u
                qt += 1
    return qt


@njit(cache=True)
def dijkstra_scaled(adj_start, arc_head, cost, length, p, q, src, dist, parent):
    """Label-setting search over w_e = cost[e]*q + length[e]*p.

    Binary min-heap with lazy deletion; stale heap entries are skipped when
    their key no longer matches dist[].
    """
    n = dist.shape[0]
    for i in range(n):
        dist[i] = INF
        parent[i] = -1
    cap = 1 << 12
    heap_w = np.empty(cap, np.int64)
    heap_v = np.empty(cap, np.int64)
    dist[src] = 0
    heap_w[0] = 0
    heap_v[0] = src
    size = 1
    while size > 0:
        w = heap_w[0]
        v = heap_v[0]
        size -= 1
        heap_w[0] = heap_w[size]
        heap_v[0] = heap_v[size]
        i = 0
        while True:
            left = 2 * i + 1
            right = left + 1
            smallest = i
            if left < size and heap_w[left] < heap_w[smallest]:
                smallest = left
            if right < size and heap_w[right] < heap_w[smallest]:
                smallest = right
            if smallest == i:
                break
            heap_w[i], heap_w[smallest] = heap_w[smallest], heap_w[i]
            heap_v[i], heap_v[smallest] = heap_v[smallest], heap_v[i]
            i = smallest
        if w != dist[v]:
            continue
        for e in range(adj_start[v], adj_start[v + 1]):
            u = arc_head[e]
            nw = w + cost[e] * q + length[e] * p
            if nw < dist[u]:
                dist[u] = nw
                parent[u] = e
                if size == cap:
                    new_cap = cap * 2
                    nh_w = np.empty(new_cap, np.int64)
                    nh_v = np.empty(new_cap, np.int64)
                    nh_w[:size] = heap_w[:size]
                    nh_v[:size] = heap_v[:size]
                    heap_w = nh_w
                    heap_v = nh_v
                    cap = new_cap
                heap_w[size] = nw
                heap_v[size] = u
                i = size
                size += 1
                while i > 0:
                    par = (i - 1) // 2
                    if heap_w[par] <= heap_w[i]:
                        break
                    heap_w[i], heap_w[par] = heap_w[par], heap_w[i]
                    heap_v[i], heap_v[par] = heap_v[par], heap_v[i]
                    i = par


@njit(cache=True)
def hs_scan_scaled(hs_tail, hs_head, hs_cost, hs_length, p, q, s_copy, d, parent):
    """One ordered pass over arcs sorted by head level; exact on leveled DAGs.

    Every arc goes strictly forward in level, so by the time an arc is
    relaxed all in-arcs of its tail have been processed. Ties are broken
    toward the smallest tail copy id.
    """
    n = d.shape[0]
    for i in range(n):
        d[i] = INF
        parent[i] = -1
    d[s_copy] = 0
    for e in range(hs_tail.shape[0]):
        tc = hs_tail[e]
        dt = d[tc]
        if dt >= INF:
            continue
        cand = dt + hs_cost[e] * q + hs_length[e] * p
        hc = hs_head[e]
        if cand < d[hc]:
            d[hc] = cand
            parent[hc] = e
        elif cand == d[hc] and parent[hc] >= 0 and tc < hs_tail[parent[hc]]:
            parent[hc] = e


@njit(cache=True)
def k_hs_count_arcs(e_tail, e_head, hop, num_copies, k, t):
    """Number of (arc, copy-offset) pairs the k-HS keeps (incl. sink arcs)."""
    m = e_tail.shape[0]
    total = 0
    for e in range(m):
        u = e_tail[e]
        v = e_head[e]
        if hop[u] < 0 or u == t:
            continue
        if v == t:
            total += num_copies[u]  # sink rule: from every copy of u
            continue
        if hop[v] < 0:
            continue
        for du in range(num_copies[u]):
            off = hop[u] + du + 1 - hop[v]
            if 0 <= off < num_copies[v]:
                total += 1
    return total


@njit(cache=True)
def k_hs_fill_arcs(
    e_tail,
    e_head,
    hop,
    num_copies,
    copy_start,
    k,
    t,
    t_copy,
    t_level,
    out_tail,
    out_head,
    out_level,
    out_kind,
    out_orig,
):
    """Emit the kept (arc, copy-offset) pairs; kinds: 0 = level, 2 = sink."""
    m = e_tail.shape[0]
    w = 0
    for e in range(m):
        u = e_tail[e]
        v = e_head[e]
        if hop[u] < 0 or u == t:
            continue
        if v == t:
            for du in range(num_copies[u]):
                out_tail[w] = copy_start[u] + du
                out_head[w] = t_copy
                out_level[w] = t_level
                out_kind[w] = 2
                out_orig[w] = e
                w += 1
            continue
        if hop[v] < 0:
            continue
        for du in range(num_copies[u]):
            off = hop[u] + du + 1 - hop[v]
            if 0 <= off < num_copies[v]:
                out_tail[w] = copy_start[u] + du
                out_head[w] = copy_start[v] + off
                out_level[w] = hop[u] + du + 1
                out_kind[w] = 0
                out_orig[w] = e
                w += 1
    return w


@njit(cache=True)
def fill_csr(keys, starts, order_out):
    """Stable bucket fill: order_out groups element ids by keys[i], given
    `starts` = exclusive prefix sums of the bucket counts (clobbered)."""
    for i in range(keys.shape[0]):
        k = keys[i]
        order_out[starts[k]] = i
        starts[k] += 1


@njit(cache=True)
def hs_scan_two_scaled(
    tail_a, head_a, cost_a, len_a, lev_a,
    tail_b, head_b, cost_b, len_b, lev_b,
    p, q, s_copy, d, parent,
):
    """Level scan over two arc blocks, each sorted by head level.

    Blocks are merged on the fly (block A first on level ties); parents
    into block B are encoded as len(A) + index. Same tie-breaking as the
    single-block scan.
    """
    n = d.shape[0]
    for i in range(n):
        d[i] = INF
        parent[i] = -1
    d[s_copy] = 0
    na = tail_a.shape[0]
    nb = tail_b.shape[0]
    i = 0
    j = 0
    while i < na or j < nb:
        if j >= nb or (i < na and lev_a[i] <= lev_b[j]):
            tc = tail_a[i]
            hc = head_a[i]
            wgt = cost_a[i] * q + len_a[i] * p
            eid = i
            i += 1
        else:
            tc = tail_b[j]
            hc = head_b[j]
            wgt = cost_b[j] * q + len_b[j] * p
            eid = na + j
            j += 1
        dt = d[tc]
        if dt >= INF:
            continue
        cand = dt + wgt
        if cand < d[hc]:
            d[hc] = cand
            parent[hc] = eid
        elif cand == d[hc] and parent[hc] >= 0:
            old = parent[hc]
            old_tail = tail_a[old] if old < na else tail_b[old - na]
            if tc < old_tail:
                parent[hc] = eid


@njit(cache=True)
def perspective_argmax(adj_start, arc_head, arc_weight, xs, ys, t, out_arc):
    """Per vertex, the out-arc maximizing projected progress toward t per weight.

    Scores are compared by cross-multiplication (weights are positive);
    arcs with non-positive weight are not candidates, and a vertex keeps
    its best arc only when the projection is strictly positive. The scan
    runs in arc-id order, so ties keep the smallest arc id.
    """
    n = adj_start.shape[0] - 1
    tx = xs[t]
    ty = ys[t]
    for v in range(n):
        best = -1
        best_dot = 0.0
        best_w = 1.0
        vx = xs[v]
        vy = ys[v]
        dtx = tx - vx
        dty = ty - vy
        for e in range(adj_start[v], adj_start[v + 1]):
            w = arc_weight[e]
            if w <= 0.0:
                continue
            u = arc_head[e]
            dot = (xs[u] - vx) * dtx + (ys[u] - vy) * dty
            if best < 0:
                if dot > 0.0:
                    best = e
                    best_dot = dot
                    best_w = w
            elif dot * best_w > best_dot * w:
                best = e
                best_dot = dot
                best_w = w
        out_arc[v] = best

"""Leveled hierarchical structures and their linear-time path scans.

A structure places copies of the original vertices on integer levels and
keeps only arcs that go strictly forward in level, so a min-weight s-t
path falls out of one ordered pass over the arcs (no priority queue).

Two builders are provided. For acyclic inputs, each vertex gets a single
copy at its longest-path level and no arc is lost, so the scan is exact.
For arbitrary graphs, each vertex gets k consecutive copies starting at
its BFS hop distance from s; arcs join copies on neighboring levels,
except that the target keeps one terminal copy fed from every copy of its
in-neighbors regardless of level. Optional shortcut arcs compress chains
of "perspective" arcs chosen by geometric progress toward the target.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from . import _kernels
from .dijkstra import WeightView
from .errors import CspathError, CycleError, UnreachableError
from .graph import Graph, Path

ARC_LEVEL, ARC_JUMP, ARC_SINK, ARC_SHORTCUT = 0, 1, 2, 3
KIND_NAMES = ("level", "jump", "sink", "shortcut")


@dataclass(frozen=True, eq=False)
class HierStructure:
    """Copies of vertices on levels plus level-sorted forward arcs.

    Copy bookkeeping covers every constructed copy; pruning only filters
    arcs, so bookkeeping invariants (consecutive runs of at most k levels
    starting at the hop distance) always hold. Arc arrays are sorted by
    head level and an arc id is its position in them.
    """

    graph: Graph
    source: int
    target: int
    k: int
    p_max: int
    # per original vertex
    first_level: np.ndarray  # -1 when the vertex has no copies
    num_copies: np.ndarray
    copy_start: np.ndarray
    # per copy
    copy_vertex: np.ndarray
    copy_level: np.ndarray
    s_copy: int
    t_copy: int
    levels: int  # level index of the target copy (the last level)
    # per hs arc, sorted by head level
    hs_tail: np.ndarray
    hs_head: np.ndarray
    hs_cost: np.ndarray
    hs_length: np.ndarray
    hs_kind: np.ndarray
    hs_orig: np.ndarray  # >= 0: original arc id; < 0: chains[-orig-1]
    chains: tuple[tuple[int, ...], ...]

    @property
    def n_copies(self) -> int:
        return int(self.copy_vertex.shape[0])

    @property
    def arc_count(self) -> int:
        return int(self.hs_tail.shape[0])

    def copy_of(self, v: int, level: int) -> int:
        """Copy id of vertex v at the given level, or -1."""
        first = int(self.first_level[v])
        if first < 0 or not (first <= level < first + int(self.num_copies[v])):
            return -1
        return int(self.copy_start[v]) + (level - first)

    def expand_arc(self, e: int) -> tuple[int, ...]:
        o = int(self.hs_orig[e])
        if o >= 0:
            return (o,)
        return self.chains[-o - 1]

    def head_levels(self) -> np.ndarray:
        return self.copy_level[self.hs_head]

    def dump(self) -> str:
        """Debug text: `vertex level` per arc-incident copy, then
        `tailcopy headcopy kind` per arc."""
        used = np.zeros(self.n_copies, bool)
        used[self.hs_tail] = True
        used[self.hs_head] = True
        used[self.s_copy] = used[self.t_copy] = True
        lines = [
            f"{int(self.copy_vertex[c])} {int(self.copy_level[c])}"
            for c in np.flatnonzero(used)
        ]
        for e in range(self.arc_count):
            lines.append(
                f"{int(self.hs_tail[e])} {int(self.hs_head[e])} {KIND_NAMES[int(self.hs_kind[e])]}"
            )
        return "\n".join(lines) + "\n"


def _bfs_hops(g: Graph, src: int) -> np.ndarray:
    hop = np.empty(g.n, np.int64)
    _kernels.bfs_hops(g.adj_start, g.arc_head, np.int64(src), hop)
    return hop


def _bfs_hops_reverse(g: Graph, src: int) -> np.ndarray:
    radj_start, perm = g._reverse_csr
    hop = np.empty(g.n, np.int64)
    _kernels.bfs_hops(radj_start, g.arc_tail[perm], np.int64(src), hop)
    return hop


def _sort_by_head_level(copy_level, tails, heads, costs, lengths, kinds, origs):
    order = np.argsort(copy_level[heads], kind="stable")
    return (
        tails[order],
        heads[order],
        costs[order],
        lengths[order],
        kinds[order],
        origs[order],
    )


def build_k_hs(g: Graph, s: int, t: int, k: int, prune: bool = True) -> HierStructure:
    """k consecutive copies per vertex starting at its hop distance from s.

    s and t keep a single copy each: s at level 0, t at a terminal level
    past every other copy, fed by sink arcs from every copy of its
    in-neighbors (the target is reachable here whenever it is in g).
    With ``prune``, arcs that cannot lie on any s-t route are dropped.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if s == t:
        raise ValueError("source and target must differ")
    hop = _bfs_hops(g, s)
    if hop[t] < 0:
        raise UnreachableError(f"target {t} is unreachable from source {s}")

    first_level = hop.copy()
    num_copies = np.where(hop >= 0, k, 0).astype(np.int64)
    num_copies[s] = 1
    num_copies[t] = 1
    alive = hop >= 0
    other = alive.copy()
    other[t] = False
    t_level = int((first_level[other] + num_copies[other] - 1).max()) + 1
    first_level[t] = t_level

    copy_start = np.zeros(g.n, np.int64)
    copy_start[1:] = np.cumsum(num_copies)[:-1]
    n_copies = int(num_copies.sum())
    copy_vertex = np.repeat(np.arange(g.n, dtype=np.int64), num_copies)
    copy_level = first_level[copy_vertex] + (
        np.arange(n_copies, dtype=np.int64) - copy_start[copy_vertex]
    )

    t_copy = int(copy_start[t])
    if _kernels.NUMBA_OK:
        total = _kernels.k_hs_count_arcs(
            g.arc_tail, g.arc_head, hop, num_copies, np.int64(k), np.int64(t)
        )
        raw_tail = np.empty(total, np.int64)
        raw_head = np.empty(total, np.int64)
        raw_level = np.empty(total, np.int64)
        raw_kind = np.empty(total, np.int8)
        raw_orig = np.empty(total, np.int64)
        _kernels.k_hs_fill_arcs(
            g.arc_tail,
            g.arc_head,
            hop,
            num_copies,
            copy_start,
            np.int64(k),
            np.int64(t),
            np.int64(t_copy),
            np.int64(t_level),
            raw_tail,
            raw_head,
            raw_level,
            raw_kind,
            raw_orig,
        )
        order = np.argsort(raw_level.astype(np.int32), kind="stable")
        arrs = (
            raw_tail[order],
            raw_head[order],
            g.cost[raw_orig[order]],
            g.length[raw_orig[order]],
            raw_kind[order],
            raw_orig[order],
        )
    else:
        e_tail = g.arc_tail
        e_head = g.arc_head
        base = alive[e_tail] & alive[e_head] & (e_tail != t) & (e_head != t)
        tails, heads, costs, lengths, kinds, origs = [], [], [], [], [], []
        for du in range(k):
            mask = base & (du < num_copies[e_tail])
            off = hop[e_tail] + du + 1 - hop[e_head]
            mask &= (off >= 0) & (off < num_copies[e_head])
            idx = np.flatnonzero(mask)
            tails.append(copy_start[e_tail[idx]] + du)
            heads.append(copy_start[e_head[idx]] + off[idx])
            costs.append(g.cost[idx])
            lengths.append(g.length[idx])
            kinds.append(np.full(idx.size, ARC_LEVEL, np.int8))
            origs.append(idx)
        # sink rule: arcs into t from every copy of every in-neighbor
        sink = (e_head == t) & (e_tail != t) & alive[e_tail]
        for du in range(k):
            idx = np.flatnonzero(sink & (du < num_copies[e_tail]))
            tails.append(copy_start[e_tail[idx]] + du)
            heads.append(np.full(idx.size, t_copy, np.int64))
            costs.append(g.cost[idx])
            lengths.append(g.length[idx])
            kinds.append(np.full(idx.size, ARC_SINK, np.int8))
            origs.append(idx)
        arrs = _sort_by_head_level(
            copy_level,
            np.concatenate(tails),
            np.concatenate(heads),
            np.concatenate(costs),
            np.concatenate(lengths),
            np.concatenate(kinds),
            np.concatenate(origs),
        )
    hs = HierStructure(
        graph=g,
        source=s,
        target=t,
        k=k,
        p_max=1,
        first_level=first_level,
        num_copies=num_copies,
        copy_start=copy_start,
        copy_vertex=copy_vertex,
        copy_level=copy_level,
        s_copy=int(copy_start[s]),
        t_copy=t_copy,
        levels=t_level,
        hs_tail=arrs[0],
        hs_head=arrs[1],
        hs_cost=arrs[2],
        hs_length=arrs[3],
        hs_kind=arrs[4],
        hs_orig=arrs[5],
        chains=(),
    )
    return prune_dead_ends(hs) if prune else hs


def build_dag_hs(g: Graph, s: int, t: int) -> HierStructure:
    """Single copy per vertex at its longest-path level; no arc is lost.

    Requires an acyclic graph (verified). Vertices not on any s-t route
    are pruned; every arc of the pruned subgraph is kept, so the level
    scan returns exact shortest paths.
    """
    if s == t:
        raise ValueError("source and target must differ")
    # Kahn over the whole graph, recording a topological order
    indeg = np.bincount(g.arc_head, minlength=g.n).astype(np.int64)
    order: list[int] = [v for v in range(g.n) if indeg[v] == 0]
    qh = 0
    while qh < len(order):
        v = order[qh]
        qh += 1
        for e in g.out_arcs(v):
            h = int(g.arc_head[e])
            indeg[h] -= 1
            if indeg[h] == 0:
                order.append(h)
    if len(order) != g.n:
        raise CycleError("graph contains a cycle; use build_k_hs instead")

    fwd = _bfs_hops(g, s)
    if fwd[t] < 0:
        raise UnreachableError(f"target {t} is unreachable from source {s}")
    alive = (fwd >= 0) & (_bfs_hops_reverse(g, t) >= 0)

    level = np.full(g.n, -1, np.int64)
    level[s] = 0
    for v in order:
        if not alive[v] or level[v] < 0:
            continue
        for e in g.out_arcs(v):
            h = int(g.arc_head[e])
            if alive[h] and level[v] + 1 > level[h]:
                level[h] = level[v] + 1

    num_copies = alive.astype(np.int64)
    copy_start = np.zeros(g.n, np.int64)
    copy_start[1:] = np.cumsum(num_copies)[:-1]
    copy_vertex = np.flatnonzero(alive).astype(np.int64)
    first_level = np.where(alive, level, -1)

    keep = np.flatnonzero(alive[g.arc_tail] & alive[g.arc_head])
    tails = copy_start[g.arc_tail[keep]]
    heads = copy_start[g.arc_head[keep]]
    diff = level[g.arc_head[keep]] - level[g.arc_tail[keep]]
    kinds = np.where(diff == 1, ARC_LEVEL, ARC_JUMP).astype(np.int8)
    copy_level = level[copy_vertex]
    arrs = _sort_by_head_level(
        copy_level, tails, heads, g.cost[keep], g.length[keep], kinds, keep
    )
    return HierStructure(
        graph=g,
        source=s,
        target=t,
        k=1,
        p_max=1,
        first_level=first_level,
        num_copies=num_copies,
        copy_start=copy_start,
        copy_vertex=copy_vertex,
        copy_level=copy_level,
        s_copy=int(copy_start[s]),
        t_copy=int(copy_start[t]),
        levels=int(level[t]),
        hs_tail=arrs[0],
        hs_head=arrs[1],
        hs_cost=arrs[2],
        hs_length=arrs[3],
        hs_kind=arrs[4],
        hs_orig=arrs[5],
        chains=(),
    )


def prune_dead_ends(hs: HierStructure) -> HierStructure:
    """Drop arcs whose head copy cannot reach the target copy.

    Iterated dead-end removal and reverse reachability have the same
    fixpoint, so one reverse BFS from the target copy suffices. Cannot
    remove any s-t route.
    """
    if hs.arc_count == 0:
        return hs
    counts = np.bincount(hs.hs_head, minlength=hs.n_copies)
    radj = np.zeros(hs.n_copies + 1, np.int64)
    np.cumsum(counts, out=radj[1:])
    if _kernels.NUMBA_OK:
        order = np.empty(hs.arc_count, np.int64)
        _kernels.fill_csr(hs.hs_head, radj[:-1].copy(), order)
    else:
        order = np.argsort(hs.hs_head, kind="stable")
    reach = np.empty(hs.n_copies, np.int64)
    _kernels.bfs_hops(radj, hs.hs_tail[order], np.int64(hs.t_copy), reach)
    keep = reach[hs.hs_head] >= 0
    if keep.all():
        return hs
    new_chains: list[tuple[int, ...]] = []
    origs = hs.hs_orig[keep].copy()
    for i in np.flatnonzero(origs < 0):
        new_chains.append(hs.chains[-int(origs[i]) - 1])
        origs[i] = -len(new_chains)
    return replace(
        hs,
        hs_tail=hs.hs_tail[keep],
        hs_head=hs.hs_head[keep],
        hs_cost=hs.hs_cost[keep],
        hs_length=hs.hs_length[keep],
        hs_kind=hs.hs_kind[keep],
        hs_orig=origs,
        chains=tuple(new_chains),
    )


# ---------------------------------------------------------------------------
# perspective arcs and shortcuts


@dataclass(frozen=True)
class PerspectiveMap:
    """Per vertex, the out-arc with the best progress toward t per weight
    (-1 when no out-arc makes positive progress)."""

    target: int
    arc_of: np.ndarray


def _perspective_from_weights(g: Graph, t: int, arc_weight: np.ndarray) -> PerspectiveMap:
    if g.coords is None:
        raise CspathError("perspective arcs need vertex coordinates")
    xs = np.ascontiguousarray(g.coords[:, 0])
    ys = np.ascontiguousarray(g.coords[:, 1])
    out = np.empty(g.n, np.int64)
    if _kernels.NUMBA_OK:
        _kernels.perspective_argmax(
            g.adj_start, g.arc_head, arc_weight, xs, ys, np.int64(t), out
        )
        return PerspectiveMap(t, out)
    for v in range(g.n):  # pure-Python fallback, same tie-breaking
        best, best_dot, best_w = -1, 0.0, 1.0
        dtx, dty = xs[t] - xs[v], ys[t] - ys[v]
        for e in g.out_arcs(v):
            w = float(arc_weight[e])
            if w <= 0.0:
                continue
            u = int(g.arc_head[e])
            dot = (xs[u] - xs[v]) * dtx + (ys[u] - ys[v]) * dty
            if best < 0:
                if dot > 0.0:
                    best, best_dot, best_w = e, dot, w
            elif dot * best_w > best_dot * w:
                best, best_dot, best_w = e, dot, w
        out[v] = best
    return PerspectiveMap(t, out)


def compute_perspective_arcs(g: Graph, t: int, w: WeightView) -> PerspectiveMap:
    """Choose each vertex's perspective arc under weights c(alpha).

    The score of an out-arc (v, j) is |vj| cos(angle(vj, vt)) / c_vj; only
    strictly positive scores qualify and zero-weight arcs are excluded
    (the score is undefined there). Ties keep the smallest arc id.
    """
    weight = g.cost + float(w.alpha) * g.length
    return _perspective_from_weights(g, t, np.asarray(weight, np.float64))


@dataclass(frozen=True)
class ShortcutBlock:
    """Per-alpha shortcut arcs, sorted by head level, kept apart from the
    structure's own arcs so repeated probes avoid re-sorting the skeleton."""

    tail: np.ndarray
    head: np.ndarray
    cost: np.ndarray
    length: np.ndarray
    level: np.ndarray
    chains: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return int(self.tail.shape[0])


def compute_shortcuts(hs: HierStructure, pm: PerspectiveMap, p_max: int) -> ShortcutBlock:
    """One shortcut per (vertex, chain length p) for p = 2..p_max.

    A chain follows perspective arcs p times from v; the shortcut joins
    v's earliest copy to the earliest copy of the chain's end at a level
    strictly greater, carrying the chain's summed cost and length (and the
    chain itself, for path expansion). At most n * p_max arcs result.
    """
    if p_max < 1:
        raise ValueError("p_max must be at least 1")
    g = hs.graph
    if pm.target != hs.target:
        raise ValueError("perspective map targets a different vertex")
    n = g.n
    arc_of = pm.arc_of
    cur = np.arange(n, dtype=np.int64)
    valid = (hs.first_level >= 0).copy()
    valid[hs.target] = False
    csum = np.zeros(n, np.int64)
    lsum = np.zeros(n, np.int64)
    chain_arcs = np.full((p_max, n), -1, np.int64)

    sc_tail: list[np.ndarray] = []
    sc_head: list[np.ndarray] = []
    sc_cost: list[np.ndarray] = []
    sc_len: list[np.ndarray] = []
    chains: list[tuple[int, ...]] = []

    for step in range(p_max):
        e = np.where(valid, arc_of[cur], -1)
        valid = valid & (e >= 0)
        ee = np.where(valid, e, 0)
        csum = csum + np.where(valid, g.cost[ee], 0)
        lsum = lsum + np.where(valid, g.length[ee], 0)
        cur = np.where(valid, g.arc_head[ee], cur)
        chain_arcs[step] = np.where(valid, e, -1)
        if step == 0:
            continue
        # emit shortcuts for chains of length step+1 (>= 2)
        tail_level = hs.first_level
        end_first = hs.first_level[cur]
        lvl = np.maximum(end_first, tail_level + 1)
        exists = valid & (end_first >= 0) & (lvl < end_first + hs.num_copies[cur])
        is_t = valid & (cur == hs.target)
        head_copy = np.where(is_t, hs.t_copy, hs.copy_start[cur] + (lvl - end_first))
        emit = np.flatnonzero(exists | is_t)
        if emit.size == 0:
            continue
        sc_tail.append(hs.copy_start[emit])
        sc_head.append(head_copy[emit])
        sc_cost.append(csum[emit])
        sc_len.append(lsum[emit])
        for v in emit:
            chains.append(tuple(int(a) for a in chain_arcs[: step + 1, v]))

    if not sc_tail:
        empty = np.empty(0, np.int64)
        return ShortcutBlock(empty, empty, empty, empty, empty, ())
    tails = np.concatenate(sc_tail)
    heads = np.concatenate(sc_head)
    levels = hs.copy_level[heads]
    order = np.argsort(levels, kind="stable")
    return ShortcutBlock(
        tail=tails[order],
        head=heads[order],
        cost=np.concatenate(sc_cost)[order],
        length=np.concatenate(sc_len)[order],
        level=levels[order],
        chains=tuple(chains[i] for i in order),
    )


def add_perspective_shortcuts(hs: HierStructure, pm: PerspectiveMap, p_max: int) -> HierStructure:
    """Materialize the shortcuts of :func:`compute_shortcuts` into a new
    structure (arcs re-sorted by head level). Apply before pruning so
    shortcut routes are not cut off."""
    if p_max < 2:
        if p_max < 1:
            raise ValueError("p_max must be at least 1")
        return hs if hs.p_max == p_max else replace(hs, p_max=p_max)
    block = compute_shortcuts(hs, pm, p_max)
    if block.count == 0:
        return replace(hs, p_max=p_max)
    chains = list(hs.chains)
    origs = np.empty(block.count, np.int64)
    for j, chain in enumerate(block.chains):
        chains.append(chain)
        origs[j] = -len(chains)
    tails = np.concatenate([hs.hs_tail, block.tail])
    heads = np.concatenate([hs.hs_head, block.head])
    costs = np.concatenate([hs.hs_cost, block.cost])
    lengths = np.concatenate([hs.hs_length, block.length])
    kinds = np.concatenate([hs.hs_kind, np.full(block.count, ARC_SHORTCUT, np.int8)])
    origv = np.concatenate([hs.hs_orig, origs])
    arrs = _sort_by_head_level(hs.copy_level, tails, heads, costs, lengths, kinds, origv)
    return replace(
        hs,
        p_max=p_max,
        hs_tail=arrs[0],
        hs_head=arrs[1],
        hs_cost=arrs[2],
        hs_length=arrs[3],
        hs_kind=arrs[4],
        hs_orig=arrs[5],
        chains=tuple(chains),
    )


# ---------------------------------------------------------------------------
# the level scan


def _scan_scaled(hs: HierStructure, p: int, q: int, force: str | None = None):
    max_cost = int(hs.hs_cost.max()) if hs.arc_count else 0
    max_length = int(hs.hs_length.max()) if hs.arc_count else 0
    use_kernel = _kernels.NUMBA_OK and _kernels.fits_int64(
        hs.levels + 1, max_cost, max_length, p, q
    )
    if force == "kernel":
        use_kernel = True
    elif force == "python":
        use_kernel = False
    if use_kernel:
        d = np.empty(hs.n_copies, np.int64)
        parent = np.empty(hs.n_copies, np.int64)
        _kernels.hs_scan_scaled(
            hs.hs_tail,
            hs.hs_head,
            hs.hs_cost,
            hs.hs_length,
            np.int64(p),
            np.int64(q),
            np.int64(hs.s_copy),
            d,
            parent,
        )
        return d, parent
    d: list = [math.inf] * hs.n_copies
    parent = [-1] * hs.n_copies
    d[hs.s_copy] = 0
    tails = hs.hs_tail
    heads = hs.hs_head
    for e in range(hs.arc_count):
        tc = int(tails[e])
        dt = d[tc]
        if dt == math.inf:
            continue
        cand = dt + int(hs.hs_cost[e]) * q + int(hs.hs_length[e]) * p
        hc = int(heads[e])
        if cand < d[hc]:
            d[hc] = cand
            parent[hc] = e
        elif cand == d[hc] and parent[hc] >= 0 and tc < int(tails[parent[hc]]):
            parent[hc] = e
    return d, parent


def hs_path_scaled(hs: HierStructure, p: int, q: int, force: str | None = None) -> Path | None:
    """Min scaled-weight s-t route representable in hs; internal API."""
    d, parent = _scan_scaled(hs, p, q, force=force)
    if hs.t_copy != hs.s_copy and int(parent[hs.t_copy]) < 0:
        return None
    hs_arcs: list[int] = []
    c = hs.t_copy
    while c != hs.s_copy:
        e = int(parent[c])
        hs_arcs.append(e)
        c = int(hs.hs_tail[e])
    arcs: list[int] = []
    for e in reversed(hs_arcs):
        arcs.extend(hs.expand_arc(e))
    path = Path.from_arcs(hs.graph, arcs, source=hs.source)
    assert path.cost * q + path.length * p == int(d[hs.t_copy])
    return path


def hs_shortest_path(hs: HierStructure, w: WeightView, force: str | None = None) -> Path | None:
    """Min aggregated-weight s-t path among routes representable in hs.

    Expanding shortcut arcs yields a valid walk in the original graph; the
    total work is one pass over the hs arcs. Returns None when no copy of
    the target is reachable.
    """
    return hs_path_scaled(hs, w.p, w.q, force=force)


def hs_path_with_block(
    hs: HierStructure, block: ShortcutBlock, p: int, q: int
) -> Path | None:
    """Scan the structure's arcs merged with a per-alpha shortcut block.

    Equivalent to materializing the shortcuts and scanning, but the big
    skeleton is left untouched between probes. Falls back to the
    materialized route when the int64 guard fails.
    """
    max_cost = int(hs.hs_cost.max()) if hs.arc_count else 0
    max_length = int(hs.hs_length.max()) if hs.arc_count else 0
    if block.count:
        max_cost = max(max_cost, int(block.cost.max()))
        max_length = max(max_length, int(block.length.max()))
    if not (
        _kernels.NUMBA_OK
        and _kernels.fits_int64(hs.levels + 1, max_cost, max_length, p, q)
    ):
        merged = _materialize_block(hs, block)
        return hs_path_scaled(merged, p, q, force="python")
    d = np.empty(hs.n_copies, np.int64)
    parent = np.empty(hs.n_copies, np.int64)
    _kernels.hs_scan_two_scaled(
        hs.hs_tail,
        hs.hs_head,
        hs.hs_cost,
        hs.hs_length,
        hs.copy_level[hs.hs_head],
        block.tail,
        block.head,
        block.cost,
        block.length,
        block.level,
        np.int64(p),
        np.int64(q),
        np.int64(hs.s_copy),
        d,
        parent,
    )
    if hs.t_copy != hs.s_copy and int(parent[hs.t_copy]) < 0:
        return None
    na = hs.arc_count
    arcs: list[int] = []
    rev: list[int] = []
    c = hs.t_copy
    while c != hs.s_copy:
        e = int(parent[c])
        rev.append(e)
        c = int(hs.hs_tail[e]) if e < na else int(block.tail[e - na])
    for e in reversed(rev):
        if e < na:
            arcs.extend(hs.expand_arc(e))
        else:
            arcs.extend(block.chains[e - na])
    path = Path.from_arcs(hs.graph, arcs, source=hs.source)
    assert path.cost * q + path.length * p == int(d[hs.t_copy])
    return path


def _materialize_block(hs: HierStructure, block: ShortcutBlock) -> HierStructure:
    if block.count == 0:
        return hs
    chains = list(hs.chains)
    origs = np.empty(block.count, np.int64)
    for j, chain in enumerate(block.chains):
        chains.append(chain)
        origs[j] = -len(chains)
    arrs = _sort_by_head_level(
        hs.copy_level,
        np.concatenate([hs.hs_tail, block.tail]),
        np.concatenate([hs.hs_head, block.head]),
        np.concatenate([hs.hs_cost, block.cost]),
        np.concatenate([hs.hs_length, block.length]),
        np.concatenate([hs.hs_kind, np.full(block.count, ARC_SHORTCUT, np.int8)]),
        np.concatenate([hs.hs_orig, origs]),
    )
    return replace(
        hs,
        hs_tail=arrs[0],
        hs_head=arrs[1],
        hs_cost=arrs[2],
        hs_length=arrs[3],
        hs_kind=arrs[4],
        hs_orig=arrs[5],
        chains=tuple(chains),
    )

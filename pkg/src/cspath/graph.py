"""Immutable weighted multigraph plus preprocessing helpers.

The graph is stored in compressed adjacency (CSR) form: arcs are sorted by
tail vertex and an arc's id is its position in the sorted arrays. Undirected
edges are represented as two opposite arcs with identical weights.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import CspathError


def _csr_order(n: int, tails: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Stable sort permutation by tail plus the adjacency offsets."""
    order = np.argsort(tails, kind="stable")
    adj_start = np.zeros(n + 1, np.int64)
    np.add.at(adj_start, tails + 1, 1)
    return order, np.cumsum(adj_start)


@dataclass(frozen=True, eq=False)
class Graph:
    """Directed multigraph; per arc a non-negative cost and length.

    Immutable after construction and safe to share across workers. Use
    :meth:`from_arcs` rather than the raw constructor.
    """

    n: int
    adj_start: np.ndarray  # int64, n+1
    arc_tail: np.ndarray  # int64, m
    arc_head: np.ndarray  # int64, m
    cost: np.ndarray  # int64, m
    length: np.ndarray  # int64, m
    coords: np.ndarray | None = None  # float64, (n, 2)

    @classmethod
    def from_arcs(
        cls,
        n: int,
        tails: Sequence[int],
        heads: Sequence[int],
        costs: Sequence[int],
        lengths: Sequence[int],
        coords: np.ndarray | None = None,
    ) -> "Graph":
        tails = np.asarray(tails, np.int64)
        heads = np.asarray(heads, np.int64)
        costs = np.asarray(costs, np.int64)
        lengths = np.asarray(lengths, np.int64)
        if not (tails.shape == heads.shape == costs.shape == lengths.shape):
            raise ValueError("arc arrays must have identical length")
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        for name, arr in (("tail", tails), ("head", heads)):
            if arr.size and (arr.min() < 0 or arr.max() >= n):
                raise ValueError(f"arc {name} out of range [0, {n})")
        if costs.size and (costs.min() < 0 or lengths.min() < 0):
            raise ValueError("arc weights must be non-negative")
        order, adj_start = _csr_order(n, tails)
        if coords is not None:
            coords = np.asarray(coords, np.float64).reshape(n, 2)
        return cls(
            n=n,
            adj_start=adj_start,
            arc_tail=tails[order],
            arc_head=heads[order],
            cost=costs[order],
            length=lengths[order],
            coords=coords,
        )

    @property
    def m(self) -> int:
        return int(self.arc_head.shape[0])

    @cached_property
    def max_cost(self) -> int:
        """A: the largest arc cost (0 on arcless graphs)."""
        return int(self.cost.max()) if self.m else 0

    @cached_property
    def max_length(self) -> int:
        """B: the largest arc length (0 on arcless graphs)."""
        return int(self.length.max()) if self.m else 0

    def out_arcs(self, v: int) -> range:
        return range(int(self.adj_start[v]), int(self.adj_start[v + 1]))

    @cached_property
    def _reverse_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(offsets by head, permutation into arc ids), for reverse traversal."""
        order, radj_start = _csr_order(self.n, self.arc_head)
        return radj_start, order

    def with_coords(self, coords: np.ndarray) -> "Graph":
        coords = np.asarray(coords, np.float64).reshape(self.n, 2)
        return Graph(
            n=self.n,
            adj_start=self.adj_start,
            arc_tail=self.arc_tail,
            arc_head=self.arc_head,
            cost=self.cost,
            length=self.length,
            coords=coords,
        )

    def equals(self, other: "Graph") -> bool:
        if self.n != other.n or self.m != other.m:
            return False
        same = (
            np.array_equal(self.arc_tail, other.arc_tail)
            and np.array_equal(self.arc_head, other.arc_head)
            and np.array_equal(self.cost, other.cost)
            and np.array_equal(self.length, other.length)
        )
        if not same:
            return False
        if (self.coords is None) != (other.coords is None):
            return False
        return self.coords is None or np.array_equal(self.coords, other.coords)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(n={self.n}, m={self.m}, A={self.max_cost}, B={self.max_length})"


@dataclass(frozen=True)
class Path:
    """An s-t arc sequence with its aggregate cost and length.

    Results of the exact engines are simple paths; paths read out of a
    hierarchical structure may expand to a walk that revisits a vertex,
    which :meth:`check` can flag via ``require_simple``.
    """

    source: int
    target: int
    arcs: tuple[int, ...]
    cost: int
    length: int

    @classmethod
    def from_arcs(cls, g: Graph, arcs: Iterable[int], source: int | None = None) -> "Path":
        arcs = tuple(int(a) for a in arcs)
        if not arcs:
            if source is None:
                raise ValueError("empty path needs an explicit source")
            return cls(source=source, target=source, arcs=(), cost=0, length=0)
        src = int(g.arc_tail[arcs[0]]) if source is None else source
        return cls(
            source=src,
            target=int(g.arc_head[arcs[-1]]),
            arcs=arcs,
            cost=int(g.cost[list(arcs)].sum()),
            length=int(g.length[list(arcs)].sum()),
        )

    def aggregated_weight(self, alpha: Fraction) -> Fraction:
        return self.cost + Fraction(alpha) * self.length

    def is_simple(self, g: Graph) -> bool:
        seen = {self.source}
        for a in self.arcs:
            h = int(g.arc_head[a])
            if h in seen:
                return False
            seen.add(h)
        return True

    def check(self, g: Graph, require_simple: bool = True) -> None:
        """Raise if the stored arcs, sums, or endpoints are inconsistent."""
        if not self.arcs:
            if self.source != self.target or self.cost or self.length:
                raise CspathError("empty path must be a zero-weight self-route")
            return
        if int(g.arc_tail[self.arcs[0]]) != self.source:
            raise CspathError("first arc does not start at source")
        if int(g.arc_head[self.arcs[-1]]) != self.target:
            raise CspathError("last arc does not end at target")
        for prev, nxt in zip(self.arcs, self.arcs[1:]):
            if int(g.arc_head[prev]) != int(g.arc_tail[nxt]):
                raise CspathError("consecutive arcs do not share a vertex")
        ids = list(self.arcs)
        if self.cost != int(g.cost[ids].sum()) or self.length != int(g.length[ids].sum()):
            raise CspathError("stored cost/length do not match arc sums")
        if require_simple and not self.is_simple(g):
            raise CspathError("path repeats a vertex")


@dataclass(frozen=True)
class InstanceSpec:
    """One constrained-path problem: source, target and length budget."""

    source: int
    target: int
    beta: int

    def __post_init__(self) -> None:
        if self.source == self.target:
            raise ValueError("source and target must differ")
        if self.beta <= 0:
            raise ValueError("length budget must be positive")


# ---------------------------------------------------------------------------
# degree-2 chain contraction


@dataclass(frozen=True)
class Contraction:
    """A contracted graph plus the arc mapping used to expand paths back."""

    original: Graph
    graph: Graph
    arc_chains: tuple[tuple[int, ...], ...]  # per contracted arc: original arc ids

    def expand_path(self, path: Path) -> Path:
        arcs: list[int] = []
        for a in path.arcs:
            arcs.extend(self.arc_chains[a])
        return Path.from_arcs(self.original, arcs, source=path.source)


_NONE, _DIR, _UND = 0, 1, 2


def _classify(g: Graph, protect: frozenset[int]) -> np.ndarray:
    """Kind per vertex: contractible as a directed link, an undirected link, or not."""
    kind = np.zeros(g.n, np.int8)
    in_arcs: list[list[int]] = [[] for _ in range(g.n)]
    for e in range(g.m):
        in_arcs[int(g.arc_head[e])].append(e)
    for v in range(g.n):
        if v in protect:
            continue
        outs = [e for e in g.out_arcs(v) if int(g.arc_head[e]) != v]
        ins = [e for e in in_arcs[v] if int(g.arc_tail[e]) != v]
        if len(outs) != len(list(g.out_arcs(v))) or len(ins) != len(in_arcs[v]):
            continue  # self-loops disqualify
        if len(ins) == 1 and len(outs) == 1:
            u = int(g.arc_tail[ins[0]])
            w = int(g.arc_head[outs[0]])
            if u != w:
                kind[v] = _DIR
        elif len(ins) == 2 and len(outs) == 2:
            out_heads = sorted(int(g.arc_head[e]) for e in outs)
            in_tails = sorted(int(g.arc_tail[e]) for e in ins)
            if out_heads == in_tails and out_heads[0] != out_heads[1]:
                kind[v] = _UND
    return kind


def _contract_once(g: Graph, protect: frozenset[int]) -> tuple[Graph, tuple[tuple[int, ...], ...], bool]:
    """One contraction sweep; returns (graph, per-arc chains, changed)."""
    kind = _classify(g, protect)

    next_out: list[dict[int, int]] = [dict() for _ in range(g.n)]  # v -> {came_from: arc}
    for v in range(g.n):
        if kind[v] == _UND:
            arcs = list(g.out_arcs(v))
            heads = [int(g.arc_head[e]) for e in arcs]
            # exactly two distinct heads; continue away from where we came
            next_out[v] = {heads[1]: arcs[0], heads[0]: arcs[1]}

    consumed = np.zeros(g.m, bool)
    new_tails: list[int] = []
    new_heads: list[int] = []
    new_costs: list[int] = []
    new_lengths: list[int] = []
    chains: list[tuple[int, ...]] = []
    changed = False

    def emit(chain: list[int]) -> None:
        ids = np.array(chain)
        new_tails.append(int(g.arc_tail[chain[0]]))
        new_heads.append(int(g.arc_head[chain[-1]]))
        new_costs.append(int(g.cost[ids].sum()))
        new_lengths.append(int(g.length[ids].sum()))
        chains.append(tuple(chain))

    for start in range(g.m):
        if consumed[start]:
            continue
        anchor = int(g.arc_tail[start])
        if kind[anchor] != _NONE:
            continue
        chain = [start]
        prev = anchor
        v = int(g.arc_head[start])
        while kind[v] != _NONE and v != anchor:
            if kind[v] == _DIR:
                nxt = next(e for e in g.out_arcs(v) if int(g.arc_head[e]) != v)
            else:
                nxt = next_out[v][prev]
            chain.append(nxt)
            prev = v
            v = int(g.arc_head[nxt])
        if v == anchor and len(chain) > 1:
            continue  # closed pocket: not a simple chain, leave untouched
        for e in chain:
            consumed[e] = True
        if len(chain) > 1:
            changed = True
        emit(chain)

    # arcs never reached from an anchor (e.g. pure degree-2 cycles) stay as-is
    for e in range(g.m):
        if not consumed[e]:
            emit([e])

    order, _ = _csr_order(g.n, np.asarray(new_tails, np.int64))
    contracted = Graph.from_arcs(g.n, new_tails, new_heads, new_costs, new_lengths, coords=g.coords)
    return contracted, tuple(chains[i] for i in order), changed


def contract_degree2(g: Graph, protect: Iterable[int] = ()) -> Contraction:
    """Replace maximal chains of internal degree-2 vertices by single arcs.

    A new arc's cost and length are the sums along the replaced chain, and
    the chain is retained for path expansion. Sweeps repeat until no chain
    remains (contracting directed chains can expose new undirected ones).
    Vertices named in ``protect`` (typically s and t) are never treated as
    chain interiors. Vertex ids are preserved; contracted interiors simply
    become isolated.
    """
    protect = frozenset(int(v) for v in protect)
    cur = g
    arc_chains: tuple[tuple[int, ...], ...] | None = None
    while True:
        nxt, chains, changed = _contract_once(cur, protect)
        if arc_chains is None:
            arc_chains = chains
        else:
            arc_chains = tuple(
                tuple(a for e in chain for a in arc_chains[e]) for chain in chains
            )
        if not changed:
            return Contraction(original=g, graph=nxt, arc_chains=arc_chains)
        cur = nxt


# ---------------------------------------------------------------------------
# hop-metric diameter estimation


def _bfs_hops(g: Graph, src: int) -> np.ndarray:
    hop = np.empty(g.n, np.int64)
    _kernels.bfs_hops(g.adj_start, g.arc_head, np.int64(src), hop)
    return hop


def estimate_diameter(g: Graph, seed: int = 0, sweeps: int = 8) -> int:
    """Lower bound on the hop-metric diameter via repeated double sweeps.

    Exact on paths and cliques; on arbitrary connected graphs the bound is
    at least half the true diameter. Deterministic under ``seed``.
    """
    if g.n == 0 or g.m == 0:
        raise CspathError("diameter needs a non-empty graph")
    rng = np.random.Generator(np.random.PCG64(seed))
    cur = int(rng.integers(g.n))
    best = 0
    for _ in range(max(1, sweeps)):
        hop = _bfs_hops(g, cur)
        reached = hop >= 0
        ecc = int(hop[reached].max())
        if ecc >= best:
            best = ecc
        far = int(np.flatnonzero(reached & (hop == ecc)).min())
        if far == cur:
            break
        cur = far
    return best

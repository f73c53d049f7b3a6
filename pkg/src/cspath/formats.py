"""Plain-text graph formats: DIMACS shortest-path `.gr` files and the
versioned `udg` interchange format for generated geometric instances."""
from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from .errors import FormatError
from .graph import Graph

PathLike = str | os.PathLike


def _read_lines(path: PathLike) -> list[str]:
    with open(path, "r", encoding="ascii") as fh:
        return fh.read().splitlines()


def _parse_gr(lines: Sequence[str], label: str) -> tuple[int, int, list[tuple[int, int, int]]]:
    """Parse one .gr file into (n, m, arcs); arcs keep 1-based endpoints."""
    n = m = -1
    arcs: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "sp":
                raise FormatError(f"{label} line {lineno}: malformed problem line {raw!r}")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"{label} line {lineno}: malformed problem line {raw!r}") from None
        elif parts[0] == "a":
            if len(parts) != 4:
                raise FormatError(f"{label} line {lineno}: malformed arc line {raw!r}")
            try:
                u, v, w = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"{label} line {lineno}: malformed arc line {raw!r}") from None
            if n < 0:
                raise FormatError(f"{label} line {lineno}: arc before problem line")
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(f"{label} line {lineno}: vertex id out of range 1..{n}")
            if w < 0:
                raise FormatError(f"{label} line {lineno}: negative weight")
            arcs.append((u, v, w))
        else:
            raise FormatError(f"{label} line {lineno}: unknown line type {raw!r}")
    if n < 0:
        raise FormatError(f"{label}: missing problem line")
    if len(arcs) != m:
        raise FormatError(f"{label}: header promises {m} arcs, file has {len(arcs)}")
    return n, m, arcs


def load_dimacs(
    cost_file: PathLike,
    length_file: PathLike,
    divisor: int = 100,
    swap: bool = False,
) -> Graph:
    """Read a pair of DIMACS `.gr` files over one arc set into a Graph.

    Arc costs come from the first file and lengths from the second, each
    integerized as floor(w / divisor). ``swap=True`` exchanges the two
    roles. Self-loops are dropped; duplicate (tail, head) arcs are kept as
    parallel arcs. Vertex ids are remapped to 0-based.
    """
    if divisor < 1:
        raise ValueError("divisor must be a positive integer")
    n1, _, arcs1 = _parse_gr(_read_lines(cost_file), str(cost_file))
    n2, _, arcs2 = _parse_gr(_read_lines(length_file), str(length_file))
    if n1 != n2 or len(arcs1) != len(arcs2):
        raise FormatError("cost and length files disagree on graph size")
    for i, ((u1, v1, _), (u2, v2, _)) in enumerate(zip(arcs1, arcs2)):
        if (u1, v1) != (u2, v2):
            raise FormatError(f"arc #{i + 1} differs between files: {(u1, v1)} vs {(u2, v2)}")
    if swap:
        arcs1, arcs2 = arcs2, arcs1
    tails, heads, costs, lengths = [], [], [], []
    for (u, v, wa), (_, _, wb) in zip(arcs1, arcs2):
        if u == v:
            continue
        tails.append(u - 1)
        heads.append(v - 1)
        costs.append(wa // divisor)
        lengths.append(wb // divisor)
    return Graph.from_arcs(n1, tails, heads, costs, lengths)


def write_dimacs(g: Graph) -> tuple[str, str]:
    """Render a graph back to (cost text, length text) in `.gr` syntax.

    Weights are written as stored; reloading with ``divisor=1`` reproduces
    the graph exactly.
    """
    header = f"p sp {g.n} {g.m}"
    cost_lines = [header]
    length_lines = [header]
    for e in range(g.m):
        u = int(g.arc_tail[e]) + 1
        v = int(g.arc_head[e]) + 1
        cost_lines.append(f"a {u} {v} {int(g.cost[e])}")
        length_lines.append(f"a {u} {v} {int(g.length[e])}")
    return "\n".join(cost_lines) + "\n", "\n".join(length_lines) + "\n"


def load_coords(co_file: PathLike, n: int, scale: float = 1.0) -> np.ndarray:
    """Optional DIMACS `.co` companion: per-vertex planar coordinates."""
    coords = np.zeros((n, 2), np.float64)
    seen = np.zeros(n, bool)
    for lineno, raw in enumerate(_read_lines(co_file), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("p"):
            continue
        parts = line.split()
        if parts[0] != "v" or len(parts) != 4:
            raise FormatError(f"{co_file} line {lineno}: malformed coordinate line {raw!r}")
        try:
            vid, x, y = int(parts[1]), float(parts[2]), float(parts[3])
        except ValueError:
            raise FormatError(f"{co_file} line {lineno}: malformed coordinate line {raw!r}") from None
        if not (1 <= vid <= n):
            raise FormatError(f"{co_file} line {lineno}: vertex id out of range 1..{n}")
        coords[vid - 1] = (x * scale, y * scale)
        seen[vid - 1] = True
    if not seen.all():
        raise FormatError(f"{co_file}: coordinates missing for {int((~seen).sum())} vertices")
    return coords


# ---------------------------------------------------------------------------
# udg format: header `udg <n> <m> <r> <seed>`, then `v <id> <x> <y>` and
# `a <tail> <head> <cost> <length>` lines with 0-based vertex ids.

UDG_FORMAT_VERSION = "udg"


def write_udg(g: Graph, r: float, seed: int) -> str:
    if g.coords is None:
        raise FormatError("udg format requires vertex coordinates")
    lines = [f"{UDG_FORMAT_VERSION} {g.n} {g.m} {float(r)!r} {seed}"]
    for v in range(g.n):
        lines.append(f"v {v} {float(g.coords[v, 0])!r} {float(g.coords[v, 1])!r}")
    for e in range(g.m):
        lines.append(
            f"a {int(g.arc_tail[e])} {int(g.arc_head[e])} {int(g.cost[e])} {int(g.length[e])}"
        )
    return "\n".join(lines) + "\n"


def load_udg(path: PathLike) -> tuple[Graph, float, int]:
    """Read the udg text format; returns (graph, radius, seed)."""
    lines = _read_lines(path)
    if not lines:
        raise FormatError(f"{path}: empty file")
    head = lines[0].split()
    if len(head) != 5 or head[0] != UDG_FORMAT_VERSION:
        raise FormatError(f"{path} line 1: expected 'udg <n> <m> <r> <seed>' header")
    try:
        n, m, r, seed = int(head[1]), int(head[2]), float(head[3]), int(head[4])
    except ValueError:
        raise FormatError(f"{path} line 1: malformed header") from None
    coords = np.full((n, 2), np.nan)
    tails, heads, costs, lengths = [], [], [], []
    for lineno, raw in enumerate(lines[1:], 2):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "v" and len(parts) == 4:
                coords[int(parts[1])] = (float(parts[2]), float(parts[3]))
            elif parts[0] == "a" and len(parts) == 5:
                tails.append(int(parts[1]))
                heads.append(int(parts[2]))
                costs.append(int(parts[3]))
                lengths.append(int(parts[4]))
            else:
                raise FormatError(f"{path} line {lineno}: unknown line {raw!r}")
        except (ValueError, IndexError):
            raise FormatError(f"{path} line {lineno}: malformed line {raw!r}") from None
    if np.isnan(coords).any():
        raise FormatError(f"{path}: missing vertex coordinates")
    if len(tails) != m:
        raise FormatError(f"{path}: header promises {m} arcs, file has {len(tails)}")
    return Graph.from_arcs(n, tails, heads, costs, lengths, coords=coords), r, seed

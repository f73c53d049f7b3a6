"""Random unit-disk instance generation.

Instances are reproducible across platforms: all randomness comes from a
PCG64 generator (see RNG_ALGORITHM), points are drawn first as an (n, 2)
uniform block, and per-edge noise factors are drawn afterwards in
lexicographic pair order over the connected pairs.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.spatial import cKDTree

from .graph import Graph

RNG_ALGORITHM = "pcg64"

# Real distances are scaled by this factor and truncated to integers, so a
# unit-square diagonal maps to 14142 and the noisiest arc length stays
# below 3 * 14143 while relative rounding error stays under 1e-3.
WEIGHT_SCALE = 10_000


def _disk_pairs(points: np.ndarray, r: float) -> np.ndarray:
    """Sorted (i, j) pairs with i < j and strict Euclidean distance < r."""
    tree = cKDTree(points)
    pairs = tree.query_pairs(r, output_type="ndarray")
    if pairs.size == 0:
        return pairs.reshape(0, 2)
    pairs = np.sort(pairs, axis=1)
    pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]
    diff = points[pairs[:, 0]] - points[pairs[:, 1]]
    strict = (diff * diff).sum(axis=1) < r * r
    return pairs[strict]


def udg_from_points(
    points: np.ndarray,
    r: float,
    seed: int = 0,
    noise: np.ndarray | None = None,
) -> Graph:
    """Build the unit-disk graph on explicit points.

    Every connected pair gets two opposite arcs with identical weights:
    cost = scaled distance, length = scaled distance times a noise factor
    uniform in [1, 3). ``noise`` overrides the drawn factors (one value per
    connected pair, in lexicographic pair order).
    """
    points = np.asarray(points, np.float64)
    n = points.shape[0]
    pairs = _disk_pairs(points, r)
    dist = np.sqrt(((points[pairs[:, 0]] - points[pairs[:, 1]]) ** 2).sum(axis=1))
    if noise is None:
        rng = np.random.Generator(np.random.PCG64(seed))
        noise = rng.uniform(1.0, 3.0, len(pairs))
    else:
        noise = np.asarray(noise, np.float64)
        if noise.shape != (len(pairs),):
            raise ValueError(f"need one noise factor per connected pair ({len(pairs)})")
    cost = np.floor(dist * WEIGHT_SCALE).astype(np.int64)
    length = np.floor(dist * noise * WEIGHT_SCALE).astype(np.int64)
    tails = np.concatenate([pairs[:, 0], pairs[:, 1]])
    heads = np.concatenate([pairs[:, 1], pairs[:, 0]])
    return Graph.from_arcs(
        n,
        tails,
        heads,
        np.concatenate([cost, cost]),
        np.concatenate([length, length]),
        coords=points,
    )


def generate_udg(n: int, r: float, seed: int) -> Graph:
    """n points uniform in the unit square, arcs between pairs closer than r.

    Deterministic under ``seed``. A disconnected result is legal; callers
    sampling s-t instances must reject pairs in different components.
    """
    if n < 2:
        raise ValueError("need at least two points")
    if not (0.0 < r <= math.sqrt(2.0)):
        raise ValueError("radius must be in (0, sqrt(2)]")
    rng = np.random.Generator(np.random.PCG64(seed))
    points = rng.random((n, 2))
    # noise factors are drawn from the same stream, after the point block
    pairs = _disk_pairs(points, r)
    noise = rng.uniform(1.0, 3.0, len(pairs))
    return udg_from_points(points, r, noise=noise)

"""Benchmark protocol: instance classes by s-t hop distance, repeated
trials over an algorithm matrix, and ratio/time aggregation.

Instances are drawn so that hop(s, t) lands within 10% of a target
fraction (25/50/75%) of the estimated hop diameter. Each instance's
length budget is beta = b_min + floor(theta * (b(P0) - b_min)), where
b_min is the min-length path length and b(P0) the length of the min-cost
path, which guarantees feasibility and keeps the constraint binding; both
endpoints and theta are recorded in every record. All randomness is PCG64.
"""
from __future__ import annotations

import csv
import io
import json
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .dijkstra import min_cost_tree, min_length_tree, extract_path
from .errors import CspathError, OracleOverflowError, SamplingError
from .exact import exact_csp
from .generate import RNG_ALGORITHM
from .graph import Graph, InstanceSpec, estimate_diameter
from .hs import _bfs_hops
from .larac import STATUS_INFEASIBLE, make_engine, solve

SCHEMA_VERSION = 1

SP_ALGORITHMS = ("Dij",) + tuple(f"{k}-HS{p}" for k in (1, 2, 3) for p in (1, 2, 3))
CSP_ALGORITHMS = tuple("A_" + a for a in SP_ALGORITHMS)


@dataclass(frozen=True)
class BenchRecord:
    """One measurement: algorithm x instance class x trial."""

    graph_id: str
    instance_class: int  # percent of diameter
    algorithm: str
    trial: int
    source: int
    target: int
    beta: int | None  # None in SP mode
    beta_theta: float | None
    b_min: int | None  # the two beta-rule endpoints
    b_p0: int | None
    cost: int | None
    length: int | None
    ratio: float | None  # vs the reference; None when either side failed
    time_s: float
    status: str  # ok | infeasible | failed:<reason>
    reference: str  # exact | A_Dij | Dij | none
    rng: str = RNG_ALGORITHM
    schema_version: int = SCHEMA_VERSION


@dataclass(frozen=True)
class BenchSummary:
    """Mean/stddev of ratio and time per (class, algorithm) group.

    Standard deviations use the population formula over the completed
    trials (ddof = 0).
    """

    graph_id: str
    mode: str
    groups: tuple[dict, ...]
    rng: str = RNG_ALGORITHM
    schema_version: int = SCHEMA_VERSION


def sample_instances(
    g: Graph,
    instance_class: int,
    count: int,
    seed: int,
    beta_theta: float = 0.5,
    diameter: int | None = None,
    band: float = 0.10,
) -> list[InstanceSpec]:
    """Draw s-t pairs whose hop distance is within ``band`` of
    class% * diameter, with beta assigned by the theta rule.

    Deterministic under ``seed``; raises SamplingError when the retry
    budget runs out (e.g. the graph is too fragmented for the class).
    """
    if diameter is None:
        diameter = estimate_diameter(g, seed=seed)
    target = instance_class / 100.0 * diameter
    lo = int(np.ceil(target * (1.0 - band)))
    hi = int(np.floor(target * (1.0 + band)))
    lo = max(lo, 1)
    if hi < lo:
        hi = lo
    rng = np.random.Generator(np.random.PCG64(seed))
    out: list[InstanceSpec] = []
    budget = max(200, 100 * count)
    while len(out) < count and budget > 0:
        budget -= 1
        s = int(rng.integers(g.n))
        hops = _bfs_hops(g, s)
        candidates = np.flatnonzero((hops >= lo) & (hops <= hi))
        if candidates.size == 0:
            continue
        t = int(candidates[rng.integers(candidates.size)])
        beta = _theta_beta(g, s, t, beta_theta)
        if beta is None:
            continue
        out.append(InstanceSpec(s, t, beta))
    if len(out) < count:
        raise SamplingError(
            f"class {instance_class}%: only {len(out)}/{count} instances found "
            f"(hop band [{lo}, {hi}], diameter {diameter})"
        )
    return out


def _theta_beta(g: Graph, s: int, t: int, theta: float) -> int | None:
    """beta = b_min + floor(theta * (b(P0) - b_min)); None if unreachable."""
    b_min, b_p0 = _beta_endpoints(g, s, t)
    if b_min is None:
        return None
    beta = b_min + int(theta * (b_p0 - b_min))
    return max(beta, 1)


def _beta_endpoints(g: Graph, s: int, t: int) -> tuple[int | None, int | None]:
    min_len = extract_path(g, min_length_tree(g, s), t)
    if min_len is None:
        return None, None
    min_cost = extract_path(g, min_cost_tree(g, s), t)
    return min_len.length, min_cost.length


def _run_csp_once(g: Graph, spec: InstanceSpec, algorithm: str) -> tuple:
    engine_id = algorithm.removeprefix("A_")
    t0 = time.perf_counter()
    res = solve(g, spec.source, spec.target, spec.beta, engine=make_engine(g, spec.source, spec.target, engine_id))
    dt = time.perf_counter() - t0
    if res.status == STATUS_INFEASIBLE or res.path is None:
        return None, None, dt, "infeasible"
    return res.path.cost, res.path.length, dt, "ok"


def _run_sp_once(g: Graph, spec: InstanceSpec, algorithm: str) -> tuple:
    engine = make_engine(g, spec.source, spec.target, algorithm)
    t0 = time.perf_counter()
    path = engine.min_cost_path()
    dt = time.perf_counter() - t0
    if path is None:
        return None, None, dt, "infeasible"
    return path.cost, path.length, dt, "ok"


def _reference_cost(
    g: Graph, spec: InstanceSpec, mode: str, reference: str, exact_max_n: int, dij_cost: int | None
) -> tuple[int | None, str]:
    if mode == "sp":
        return dij_cost, "Dij"
    if reference in ("auto", "exact") and (reference == "exact" or g.n <= exact_max_n):
        try:
            path = exact_csp(g, spec.source, spec.target, spec.beta)
            if path is not None:
                return path.cost, "exact"
        except OracleOverflowError:
            if reference == "exact":
                raise
    return dij_cost, "A_Dij"


_WORKER_CTX: dict = {}


def _run_cell(task: tuple) -> list[BenchRecord]:
    """All algorithms on one instance; one worker owns one cell at a time."""
    instance_class, trial, spec = task
    g = _WORKER_CTX["graph"]
    cfg = _WORKER_CTX["cfg"]
    mode, algorithms, dij_alg, beta_theta, graph_id, reference, exact_max_n = cfg
    b_min, b_p0 = _beta_endpoints(g, spec.source, spec.target)
    runs: dict[str, tuple] = {}
    for algorithm in list(algorithms) + ([dij_alg] if dij_alg not in algorithms else []):
        try:
            runs[algorithm] = (
                _run_csp_once(g, spec, algorithm)
                if mode == "csp"
                else _run_sp_once(g, spec, algorithm)
            )
        except CspathError as exc:
            runs[algorithm] = (None, None, 0.0, f"failed:{exc}")
    ref_cost, ref_name = _reference_cost(
        g, spec, mode, reference, exact_max_n, runs[dij_alg][0]
    )
    out = []
    for algorithm in algorithms:
        cost, length, dt, status = runs[algorithm]
        ratio = None
        if cost is not None and ref_cost is not None:
            ratio = cost / ref_cost if ref_cost else (1.0 if cost == 0 else None)
        out.append(
            BenchRecord(
                graph_id=graph_id,
                instance_class=instance_class,
                algorithm=algorithm,
                trial=trial,
                source=spec.source,
                target=spec.target,
                beta=spec.beta if mode == "csp" else None,
                beta_theta=beta_theta if mode == "csp" else None,
                b_min=b_min,
                b_p0=b_p0,
                cost=cost,
                length=length,
                ratio=ratio,
                time_s=dt,
                status=status,
                reference=ref_name if cost is not None else "none",
            )
        )
    return out


def run_matrix(
    g: Graph,
    classes: tuple[int, ...] = (25, 50, 75),
    algorithms: tuple[str, ...] = CSP_ALGORITHMS,
    trials: int = 10,
    seed: int = 0,
    mode: str = "csp",
    beta_theta: float = 0.5,
    graph_id: str = "graph",
    reference: str = "auto",
    exact_max_n: int = 2000,
    diameter: int | None = None,
    workers: int = 1,
) -> list[BenchRecord]:
    """Full cross product: classes x algorithms x trials, one record each.

    Wall time covers the whole solve including any structure construction;
    the ratio compares cost against the exact oracle when it completes
    within budget (``reference="auto"``) and the Dijkstra-engine result
    otherwise. Individual failures are recorded and the run continues.
    Keep ``workers=1`` for publication-grade timing; larger pools trade
    timing fidelity for throughput (fork-based, so POSIX only). Cost and
    length fields are deterministic under (graph, seed, config) either way.
    """
    if mode not in ("csp", "sp"):
        raise ValueError("mode must be 'csp' or 'sp'")
    if diameter is None:
        diameter = estimate_diameter(g, seed=seed)
    dij_alg = "A_Dij" if mode == "csp" else "Dij"
    tasks = []
    for ci, instance_class in enumerate(classes):
        specs = sample_instances(
            g,
            instance_class,
            trials,
            seed + 7919 * ci,
            beta_theta=beta_theta,
            diameter=diameter,
        )
        tasks.extend((instance_class, trial, spec) for trial, spec in enumerate(specs))
    _WORKER_CTX["graph"] = g
    _WORKER_CTX["cfg"] = (
        mode, tuple(algorithms), dij_alg, beta_theta, graph_id, reference, exact_max_n
    )
    try:
        if workers <= 1:
            cells = [_run_cell(t) for t in tasks]
        else:
            ctx = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
                cells = list(pool.map(_run_cell, tasks))
    finally:
        _WORKER_CTX.clear()
    records = [r for cell in cells for r in cell]
    records.sort(key=lambda r: (r.instance_class, r.algorithm, r.trial))
    return records


def summarize(records: list[BenchRecord], mode: str = "csp", graph_id: str | None = None) -> BenchSummary:
    """Group by (class, algorithm); population mean/stddev over trials."""
    if not records:
        raise ValueError("no records to summarize")
    groups: dict[tuple[int, str], list[BenchRecord]] = {}
    for r in records:
        groups.setdefault((r.instance_class, r.algorithm), []).append(r)
    rows = []
    for (instance_class, algorithm), rs in sorted(groups.items()):
        ratios = np.array([r.ratio for r in rs if r.ratio is not None], float)
        times = np.array([r.time_s for r in rs if r.status == "ok"], float)
        rows.append(
            {
                "instance_class": instance_class,
                "algorithm": algorithm,
                "trials": len(rs),
                "completed": int(sum(r.status == "ok" for r in rs)),
                "mean_ratio": float(ratios.mean()) if ratios.size else None,
                "std_ratio": float(ratios.std()) if ratios.size else None,
                "mean_time_s": float(times.mean()) if times.size else None,
                "std_time_s": float(times.std()) if times.size else None,
            }
        )
    return BenchSummary(
        graph_id=graph_id or records[0].graph_id,
        mode=mode,
        groups=tuple(rows),
    )


def records_to_csv(records: list[BenchRecord]) -> str:
    """RFC-4180 CSV, one record per row, header line first."""
    buf = io.StringIO()
    fields = list(BenchRecord.__dataclass_fields__)
    writer = csv.DictWriter(buf, fieldnames=fields, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
    writer.writeheader()
    for r in records:
        writer.writerow(asdict(r))
    return buf.getvalue()


def summary_to_json(summary: BenchSummary) -> str:
    return json.dumps(asdict(summary), indent=2) + "\n"

"""Lagrangian alpha search for min-cost length-bounded paths.

Aggregating the two arc weights into c(alpha) = cost + alpha * length turns
the constrained problem into a family of one-weight shortest-path problems.
Every s-t path is a line y = length * alpha + cost in the (alpha, y) plane;
the engine evaluated at alpha returns a line of the lower envelope. The
search brackets the smallest alpha whose envelope line satisfies the length
budget and reports the certified lower bound and a-priori ratio that the
final line pair implies. All search arithmetic is exact (integer path sums
and Fraction alphas); no floats are compared anywhere in the logic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dijkstra import (
    WeightView,
    dijkstra,
    extract_path,
    min_cost_tree,
    min_length_tree,
)
from .errors import CspathError
from .graph import Graph, Path
from .hs import (
    HierStructure,
    add_perspective_shortcuts,
    build_k_hs,
    compute_shortcuts,
    _perspective_from_weights,
    hs_path_scaled,
    hs_path_with_block,
    prune_dead_ends,
)

import numpy as np

STATUS_OPTIMAL_AT_ZERO = "optimal-at-zero"
STATUS_FEASIBLE_APPROX = "feasible-approx"
STATUS_INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class Line:
    """One probed s-t path viewed as the line y = length * alpha + cost."""

    cost: int
    length: int
    path: Path

    def value_at(self, alpha: Fraction) -> Fraction:
        return self.cost + alpha * self.length


@dataclass(frozen=True)
class MinorantLines:
    """The bracketing pair: a too-long cheap line and a feasible one."""

    infeasible: Line  # length > beta
    feasible: Line  # length <= beta

    def alpha_star(self) -> Fraction:
        return Fraction(
            self.feasible.cost - self.infeasible.cost,
            self.infeasible.length - self.feasible.length,
        )


@dataclass(frozen=True)
class ProbeRecord:
    alpha: Fraction
    cost: int
    length: int
    engine: str


@dataclass(frozen=True)
class LaracResult:
    status: str
    path: Path | None
    alpha_star: Fraction
    lower_bound: Fraction
    ratio_bound: Fraction
    iterations: int
    engine: str
    beta: int
    bound_is_heuristic: bool
    probes: tuple[ProbeRecord, ...]

    def probe_log(self) -> str:
        """One line per alpha probe: alpha-num alpha-den cost length engine."""
        return "".join(
            f"{p.alpha.numerator} {p.alpha.denominator} {p.cost} {p.length} {p.engine}\n"
            for p in self.probes
        )


def lower_bound(lines: MinorantLines, beta: int, alpha_star: Fraction) -> Fraction:
    """Certified underestimate of the optimum: a2 - (beta - b2) * alpha*."""
    return lines.feasible.cost - (beta - lines.feasible.length) * alpha_star


def apriori_ratio(e: Fraction, a2: int) -> Fraction:
    """Reported accuracy bound a2 / e (at most beta on positive integer
    instances); equals 1 when the feasible line is tight."""
    if e <= 0:
        raise ValueError("lower bound must be positive")
    return Fraction(a2) / e


def iteration_bound(max_cost: int, max_length: int, n: int) -> int:
    """Dichotomy probe budget: ceil(log2(A n B^2 n^2)) + 1."""
    x = max_cost * n * max_length * max_length * n * n
    if x <= 1:
        return 1
    return (x - 1).bit_length() + 1


# ---------------------------------------------------------------------------
# engines


class DijkstraEngine:
    """Exact engine: full-graph label-setting search per probe."""

    exact = True

    def __init__(self, g: Graph, s: int, t: int):
        self.g = g
        self.s = s
        self.t = t
        self.id = "Dij"

    def shortest(self, alpha: Fraction) -> Path | None:
        tree = dijkstra(self.g, self.s, WeightView(alpha))
        return extract_path(self.g, tree, self.t)

    def min_cost_path(self) -> Path | None:
        """Min cost, ties toward short length (the alpha = 0 probe)."""
        return extract_path(self.g, min_cost_tree(self.g, self.s), self.t)

    def min_length_path(self) -> Path | None:
        """Min length, ties toward low cost (the alpha -> infinity regime)."""
        return extract_path(self.g, min_length_tree(self.g, self.s), self.t)


class HsEngine:
    """Heuristic engine: k-HS level scans, optional perspective shortcuts.

    The copy skeleton depends only on (graph, s, t, k); it is built and
    pruned once, then shortcut blocks ride on top. With p_max > 1 the
    perspective map is recomputed at each probed alpha by default
    ("per-alpha"); "at-zero" freezes the shortcuts chosen under c(0).
    Construction happens lazily so it lands inside the caller's timed
    solve.
    """

    exact = False

    def __init__(
        self,
        g: Graph,
        s: int,
        t: int,
        k: int,
        p_max: int = 1,
        perspective: str = "per-alpha",
    ):
        if perspective not in ("per-alpha", "at-zero"):
            raise ValueError("perspective must be 'per-alpha' or 'at-zero'")
        self.g = g
        self.s = s
        self.t = t
        self.k = k
        self.p_max = p_max
        self.perspective = perspective
        self.id = f"{k}-HS{p_max}"
        self._skeleton: HierStructure | None = None
        self._fixed: HierStructure | None = None

    def _base(self) -> HierStructure:
        """Pruned alpha-independent skeleton, built once per engine."""
        if self._skeleton is None:
            self._skeleton = prune_dead_ends(
                build_k_hs(self.g, self.s, self.t, self.k, prune=False)
            )
        return self._skeleton

    @property
    def _per_alpha(self) -> bool:
        return self.p_max >= 2 and self.perspective == "per-alpha"

    def _fixed_structure(self) -> HierStructure:
        if self._fixed is None:
            base = self._base()
            if self.p_max >= 2:
                pm = _perspective_from_weights(
                    self.g, self.t, np.asarray(self.g.cost, np.float64)
                )
                base = add_perspective_shortcuts(base, pm, self.p_max)
            self._fixed = base
        return self._fixed

    def _scan(self, weights: np.ndarray | None, p: int, q: int) -> Path | None:
        if not self._per_alpha:
            return hs_path_scaled(self._fixed_structure(), p, q)
        assert weights is not None
        hs = self._base()
        pm = _perspective_from_weights(self.g, self.t, weights)
        block = compute_shortcuts(hs, pm, self.p_max)
        return hs_path_with_block(hs, block, p, q)

    def shortest(self, alpha: Fraction) -> Path | None:
        w = WeightView(alpha)
        weights = None
        if self._per_alpha:
            weights = np.asarray(self.g.cost + float(alpha) * self.g.length, np.float64)
        return self._scan(weights, w.p, w.q)

    def min_cost_path(self) -> Path | None:
        big = self.g.max_length * max(self.g.n - 1, 1) + 1
        weights = np.asarray(self.g.cost, np.float64) if self._per_alpha else None
        return self._scan(weights, 1, big)

    def min_length_path(self) -> Path | None:
        big = self.g.max_cost * max(self.g.n - 1, 1) + 1
        weights = np.asarray(self.g.length, np.float64) if self._per_alpha else None
        return self._scan(weights, big, 1)


def make_engine(g: Graph, s: int, t: int, spec: str, perspective: str = "per-alpha"):
    """Engine from an algorithm id: "dijkstra"/"Dij" or "<k>-HS<p_max>"."""
    name = spec.strip()
    if name.lower() in ("dij", "dijkstra"):
        return DijkstraEngine(g, s, t)
    try:
        k_part, p_part = name.split("-HS")
        return HsEngine(g, s, t, int(k_part), int(p_part), perspective=perspective)
    except ValueError:
        raise ValueError(f"unknown engine spec {spec!r}") from None


# ---------------------------------------------------------------------------
# alpha searches


class DegenerateLinesError(CspathError):
    """A heuristic engine produced a feasible path at least as cheap as the
    infeasible line, so no valid bracketing pair exists; the path itself is
    the answer. Cannot happen with the exact engine."""

    def __init__(self, path: Path, alpha: Fraction, probes: list[ProbeRecord]):
        super().__init__("feasible probe undercut the infeasible line")
        self.path = path
        self.alpha = alpha
        self.probes = probes


def _probe(engine, alpha: Fraction, probes: list[ProbeRecord]) -> Path | None:
    path = engine.shortest(alpha)
    if path is not None:
        probes.append(ProbeRecord(alpha, path.cost, path.length, engine.id))
    return path


def dichotomy_search(
    g: Graph,
    s: int,
    t: int,
    beta: int,
    engine,
    p0: Path | None = None,
) -> tuple[MinorantLines, Fraction, int, list[ProbeRecord]]:
    """Bisect alpha over [0, A n] until the bracket is narrower than the
    smallest possible breakpoint gap 1/(B^2 n^2), then intersect.

    Precondition: the engine's alpha = 0 path violates the budget (the
    caller handles the trivial branch). Returns the final line pair, the
    exact rational alpha*, and the probe count (at most
    ``iteration_bound(A, B, n)``).
    """
    probes: list[ProbeRecord] = []
    if p0 is None:
        p0 = engine.min_cost_path()
        if p0 is None:
            raise CspathError("target unreachable for this engine")
    if p0.length <= beta:
        raise ValueError("alpha = 0 already feasible; nothing to search")
    line_lo = Line(p0.cost, p0.length, p0)
    a_cap = g.max_cost * g.n
    alpha_hi = Fraction(a_cap)
    p_hi = _probe(engine, alpha_hi, probes)
    if p_hi is None or p_hi.length > beta:
        raise CspathError(f"no feasible path: even alpha = A n = {a_cap} stays over budget")
    if p_hi.cost <= line_lo.cost:
        raise DegenerateLinesError(p_hi, alpha_hi, probes)
    line_hi = Line(p_hi.cost, p_hi.length, p_hi)
    alpha_lo = Fraction(0)
    gap = Fraction(1, g.max_length * g.max_length * g.n * g.n)
    while alpha_hi - alpha_lo > gap:
        mid = (alpha_lo + alpha_hi) / 2
        pm = _probe(engine, mid, probes)
        if pm is not None and pm.length <= beta:
            alpha_hi = mid
            if pm.cost <= line_lo.cost:
                raise DegenerateLinesError(pm, mid, probes)
            line_hi = Line(pm.cost, pm.length, pm)
        else:
            alpha_lo = mid
            if pm is not None and pm.cost < line_hi.cost:
                line_lo = Line(pm.cost, pm.length, pm)
    lines = MinorantLines(line_lo, line_hi)
    return lines, lines.alpha_star(), len(probes), probes


_JUTTNER_CAP = 10_000  # safety net; each update strictly lowers the envelope


def juttner_update_search(
    g: Graph,
    s: int,
    t: int,
    beta: int,
    engine,
    p0: Path | None = None,
    p_min: Path | None = None,
) -> tuple[MinorantLines, Fraction, int, list[ProbeRecord]]:
    """Update alpha to the intersection of the current line pair until the
    probe lands on it (then the intersection is alpha*).

    Same contract as :func:`dichotomy_search`; terminates because every
    accepted update strictly lowers the envelope value at the probed alpha.
    """
    probes: list[ProbeRecord] = []
    if p0 is None:
        p0 = engine.min_cost_path()
        if p0 is None:
            raise CspathError("target unreachable for this engine")
    if p0.length <= beta:
        raise ValueError("alpha = 0 already feasible; nothing to search")
    if p_min is None:
        p_min = engine.min_length_path()
    if p_min is None or p_min.length > beta:
        raise CspathError("no feasible path: the min-length route stays over budget")
    if p_min.cost <= p0.cost:
        raise DegenerateLinesError(p_min, Fraction(0), probes)
    line_lo = Line(p0.cost, p0.length, p0)
    line_hi = Line(p_min.cost, p_min.length, p_min)
    for _ in range(_JUTTNER_CAP):
        lines = MinorantLines(line_lo, line_hi)
        alpha = lines.alpha_star()
        path = _probe(engine, alpha, probes)
        if path is None:
            break  # engine lost the route at this alpha; keep current lines
        value = path.cost + alpha * path.length
        if value >= line_lo.value_at(alpha):
            break  # on (or above) the intersection: alpha* found
        if path.length > beta:
            if path.cost >= line_hi.cost:
                break  # heuristic drift; the stored pair stays valid
            line_lo = Line(path.cost, path.length, path)
        else:
            if path.cost <= line_lo.cost:
                raise DegenerateLinesError(path, alpha, probes)
            line_hi = Line(path.cost, path.length, path)
    else:
        raise CspathError("alpha search failed to converge")
    lines = MinorantLines(line_lo, line_hi)
    return lines, lines.alpha_star(), len(probes), probes


def solve(
    g: Graph,
    s: int,
    t: int,
    beta: int,
    engine: str | DijkstraEngine | HsEngine = "dijkstra",
    search_rule: str = "juttner",
) -> LaracResult:
    """Approximately solve min-cost subject to length <= beta.

    With the exact engine, "optimal-at-zero" results are globally optimal
    and otherwise the reported ratio bound certifies cost <= ratio * OPT.
    Heuristic engines reuse the same machinery; their lower bound is only
    relative to routes representable in the structure and is flagged as
    such. Infeasible instances attach the engine's min-length path as a
    witness.
    """
    if isinstance(engine, str):
        engine = make_engine(g, s, t, engine)
    if search_rule not in ("juttner", "dichotomy"):
        raise ValueError("search_rule must be 'juttner' or 'dichotomy'")
    if beta <= 0:
        raise ValueError("length budget must be positive")
    if s == t:
        raise ValueError("source and target must differ")
    heuristic = not engine.exact

    def result(status, path, alpha, e, eps, iters, probes):
        return LaracResult(
            status=status,
            path=path,
            alpha_star=alpha,
            lower_bound=e,
            ratio_bound=eps,
            iterations=iters,
            engine=engine.id,
            beta=beta,
            bound_is_heuristic=heuristic,
            probes=tuple(probes),
        )

    zero = Fraction(0)
    p0 = engine.min_cost_path()
    if p0 is None:
        return result(STATUS_INFEASIBLE, None, zero, zero, Fraction(1), 0, [])
    probes = [ProbeRecord(zero, p0.cost, p0.length, engine.id)]
    if p0.length <= beta:
        e = Fraction(p0.cost)
        return result(STATUS_OPTIMAL_AT_ZERO, p0, zero, e, Fraction(1), 0, probes)
    p_min = engine.min_length_path()
    if p_min is None or p_min.length > beta:
        return result(STATUS_INFEASIBLE, p_min, zero, zero, Fraction(1), 0, probes)
    try:
        if search_rule == "juttner":
            lines, alpha, iters, search_probes = juttner_update_search(
                g, s, t, beta, engine, p0=p0, p_min=p_min
            )
        else:
            lines, alpha, iters, search_probes = dichotomy_search(g, s, t, beta, engine, p0=p0)
    except DegenerateLinesError as deg:
        # only heuristic structures can land here: a feasible probe undercut
        # every line seen, so it is the answer outright
        probes.extend(deg.probes)
        e = Fraction(deg.path.cost)
        return result(
            STATUS_FEASIBLE_APPROX, deg.path, deg.alpha, e, Fraction(1), len(deg.probes), probes
        )
    probes.extend(search_probes)
    e = lower_bound(lines, beta, alpha)
    a2 = lines.feasible.cost
    eps = apriori_ratio(e, a2) if e > 0 else Fraction(1)
    return result(STATUS_FEASIBLE_APPROX, lines.feasible.path, alpha, e, eps, iters, probes)

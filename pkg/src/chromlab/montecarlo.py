"""Exact and Monte Carlo probes of the event inequality, the m-set count variance and copy-count tails."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .constructions import sample_gnp
from .graph import DomainError, Graph, SizeError
from .subgraphs import count_copies_at_vertex

TOY_OUTCOME_MAX = 10**6
MSET_BUDGET = 10**8
TAIL_PATTERN_MAX = 5


@dataclass
class ToySpace:
    """A finite probability space with events ``E_1..E_t`` and ``F`` as outcome-index sets."""

    probabilities: list[Fraction]
    events: list[frozenset[int]]
    target: frozenset[int]

    def __post_init__(self):
        self.probabilities = [Fraction(q) for q in self.probabilities]
        if any(q < 0 for q in self.probabilities) or sum(self.probabilities) != 1:
            raise DomainError("probabilities must be non-negative and sum to 1")
        n = len(self.probabilities)
        if n > TOY_OUTCOME_MAX:
            raise SizeError("too many outcomes")
        self.events = [frozenset(e) for e in self.events]
        self.target = frozenset(self.target)
        for ev in [*self.events, self.target]:
            if any(not 0 <= i < n for i in ev):
                raise DomainError("event refers to an unknown outcome")

    @property
    def outcome_count(self) -> int:
        return len(self.probabilities)


@dataclass(frozen=True)
class EventBounds:
    variance_ratio: Fraction
    min_conditional: Fraction
    target_probability: Fraction

    @property
    def delta(self) -> Fraction:
        """Smallest delta for which both hypotheses hold."""
        return max(self.variance_ratio, 1 - self.min_conditional)

    @property
    def holds(self) -> bool:
        return self.target_probability >= 1 - 6 * self.delta


def event_inequality_exact(space: ToySpace) -> EventBounds:
    """Var(X)/E[X]^2, min_j Pr(F | E_j) and Pr(F) by direct summation, X counting the E_j that occur."""
    if not space.events:
        raise DomainError("need at least one event")
    den = math.lcm(*(q.denominator for q in space.probabilities))
    w = [q.numerator * (den // q.denominator) for q in space.probabilities]
    occurs = [0] * space.outcome_count
    min_cond = None
    for ev in space.events:
        pe = sum(w[i] for i in ev)
        if pe == 0:
            raise DomainError("every event needs non-zero probability")
        for i in ev:
            occurs[i] += 1
        cond = Fraction(sum(w[i] for i in ev if i in space.target), pe)
        min_cond = cond if min_cond is None else min(min_cond, cond)
    ex = sum(wi * x for wi, x in zip(w, occurs))
    ex2 = sum(wi * x * x for wi, x in zip(w, occurs))
    # Var/E^2 = (den*ex2 - ex^2) / ex^2 with everything scaled by den
    ratio = Fraction(den * ex2 - ex * ex, ex * ex)
    pf = Fraction(sum(w[i] for i in space.target), den)
    return EventBounds(ratio, min_cond, pf)


def random_toy_space(rng: np.random.Generator, max_outcomes: int = 64, max_events: int = 8) -> ToySpace:
    """Random weights, events of random density and a target biased towards being large."""
    n = int(rng.integers(1, max_outcomes + 1))
    weights = [int(x) for x in rng.integers(0, 10, size=n)]
    if sum(weights) == 0:
        weights[int(rng.integers(n))] = 1
    total = sum(weights)
    support = [i for i, x in enumerate(weights) if x]
    t = int(rng.integers(1, max_events + 1))
    events = []
    for _ in range(t):
        density = rng.random()
        ev = {i for i in range(n) if rng.random() < density}
        ev.add(support[int(rng.integers(len(support)))])
        events.append(ev)
    keep = 0.5 + 0.5 * rng.random()
    target = {i for i in range(n) if rng.random() < keep}
    return ToySpace([Fraction(x, total) for x in weights], events, target)


@dataclass
class TightnessReport:
    spaces: int
    worst_ratio: Fraction
    violations: int

    def to_json(self) -> dict:
        return {"spaces": self.spaces, "worst_ratio": str(self.worst_ratio), "worst_ratio_float": float(self.worst_ratio),
                "violations": self.violations}


def failure_ratio(bounds: EventBounds) -> Fraction:
    """(1 - Pr(F)) / delta, the quantity the constant 6 bounds; 0 when F is certain."""
    miss = 1 - bounds.target_probability
    if miss == 0:
        return Fraction(0)
    if bounds.delta == 0:
        raise ArithmeticError("F fails with zero delta")
    return miss / bounds.delta


def event_inequality_tightness(seed: int, budget: int, max_outcomes: int = 64, max_events: int = 8) -> TightnessReport:
    """Worst observed ``(1 - Pr(F))/delta`` over ``budget`` random spaces (space ``i`` uses ``seed ^ i``)."""
    if budget < 1:
        raise DomainError("budget must be at least 1")
    worst = Fraction(0)
    violations = 0
    for i in range(budget):
        bounds = event_inequality_exact(random_toy_space(np.random.default_rng(seed ^ i), max_outcomes, max_events))
        if not bounds.holds:
            violations += 1
        worst = max(worst, failure_ratio(bounds))
    return TightnessReport(budget, worst, violations)


# m-set edge counts

def _check_budget(n: int, m: int) -> None:
    if m < 0 or m > n:
        raise DomainError("need 0 <= m <= n")
    if math.comb(n, m) > MSET_BUDGET:
        raise SizeError(f"C({n},{m}) exceeds the enumeration budget")


def edge_count_histogram(graph: Graph, m: int) -> list[int]:
    """``hist[s]`` = number of ``m``-sets inducing exactly ``s`` edges.

    Depth-first over sorted prefixes with running edge counts; the last
    vertex is handled for all candidates at once with numpy.
    """
    n = graph.n
    _check_budget(n, m)
    top = m * (m - 1) // 2
    hist = np.zeros(top + 1, dtype=np.int64)
    if m == 0:
        hist[0] = 1
        return hist.tolist()
    adj = np.zeros((n, n), dtype=np.int64)
    for u, v in graph.edges:
        adj[u, v] = adj[v, u] = 1
    inside = np.zeros(n, dtype=np.int64)  # neighbours of each vertex inside the prefix

    def rec(start: int, depth: int, edges: int) -> None:
        if depth == m - 1:
            tail = edges + inside[start:]
            hist[: top + 1] += np.bincount(tail, minlength=top + 1)[: top + 1]
            return
        for v in range(start, n - (m - 1 - depth)):
            inside_v = int(inside[v])
            np.add(inside, adj[v], out=inside)
            rec(v + 1, depth + 1, edges + inside_v)
            np.subtract(inside, adj[v], out=inside)

    rec(0, 0, 0)
    return hist.tolist()


def exact_edge_msets_count(graph: Graph, m: int, s: int) -> int:
    hist = edge_count_histogram(graph, m)
    return hist[s] if 0 <= s < len(hist) else 0


def edge_msets_count_itertools(graph: Graph, m: int, s: int) -> int:
    """Independent route: every combination, edges counted from the edge set."""
    _check_budget(graph.n, m)
    es = graph.edge_set()
    return sum(
        1 for combo in combinations(range(graph.n), m)
        if sum(1 for pair in combinations(combo, 2) if pair in es) == s
    )


@dataclass
class SweepRow:
    n: int
    m: int
    p: float
    trials: int
    mean: float
    variance: float
    ratio: float
    stderr: float


def _ratio(xs: np.ndarray) -> float:
    mean = xs.mean()
    if mean == 0:
        return math.inf
    return float(xs.var(ddof=1) / mean**2)


def _jackknife_stderr(xs: np.ndarray) -> float:
    t = len(xs)
    total, total2 = xs.sum(), (xs**2).sum()
    # leave-one-out mean and unbiased variance in closed form
    loo_mean = (total - xs) / (t - 1)
    loo_var = ((total2 - xs**2) - (t - 1) * loo_mean**2) / (t - 2)
    with np.errstate(divide="ignore", invalid="ignore"):
        loo = np.where(loo_mean > 0, loo_var / loo_mean**2, np.inf)
    if not np.all(np.isfinite(loo)):
        return math.inf
    return float(math.sqrt((t - 1) / t * ((loo - loo.mean()) ** 2).sum()))


def variance_ratio_sweep(ns: Sequence[int], eps, k: int, m: int, trials: int, seed: int) -> list[SweepRow]:
    """Mean, variance and Var/mean^2 of the number of ``m``-sets with ``k*k*m`` edges in G(n, eps/m).

    Trial ``i`` at size ``n`` samples with seed ``seed ^ i``.
    """
    if trials < 2:
        raise DomainError("need at least two trials for a standard error")
    p = Fraction(eps) / m
    if not 0 < p <= 1:
        raise DomainError("eps/m must lie in (0, 1]")
    s = k * k * m
    rows = []
    for n in ns:
        _check_budget(n, m)
        xs = np.array(
            [exact_edge_msets_count(sample_gnp(n, p, seed ^ i), m, s) for i in range(trials)], dtype=np.float64
        )
        var = float(xs.var(ddof=1))
        mean = float(xs.mean())
        if var == 0:
            ratio, se = 0.0, 0.0
        else:
            ratio, se = _ratio(xs), _jackknife_stderr(xs)
        rows.append(SweepRow(n, m, float(p), trials, mean, var, ratio, se))
    return rows


def ratio_trend_ok(rows: Sequence[SweepRow], sigmas: float = 3.0) -> bool:
    """Each ratio is at most the previous one plus ``sigmas`` combined standard errors."""
    return all(
        b.ratio <= a.ratio + sigmas * math.hypot(a.stderr, b.stderr) for a, b in zip(rows, rows[1:])
    )


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    fields = ["n", "m", "p", "trials", "mean", "variance", "ratio", "stderr"]
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(asdict(row))
    return buf.getvalue()


# copy-count tails

@dataclass
class TrialReport:
    trials: int
    estimate: float
    stderr: float
    passed: bool
    details: dict

    def to_json(self) -> dict:
        return asdict(self)


def vertex_copy_tail(n: int, p, pattern: Graph, trials: int, seed: int) -> TrialReport:
    """Frequency of ``copies at vertex 0 >= mean + pn/ln n`` over seeded G(n, p) samples.

    The mean is the empirical mean of the same runs. ``passed`` is False when
    the estimate exceeds ``10/n^2`` by more than three standard errors.
    """
    if pattern.n > TAIL_PATTERN_MAX:
        raise SizeError(f"pattern limited to {TAIL_PATTERN_MAX} vertices")
    if trials < 2:
        raise DomainError("need at least two trials")
    p = float(p)
    counts = np.array(
        [count_copies_at_vertex(sample_gnp(n, p, seed ^ i), pattern, 0) for i in range(trials)], dtype=np.float64
    )
    mean = float(counts.mean())
    cut = mean + p * n / math.log(n)
    hits = (counts >= cut).astype(np.float64) if p > 0 else np.zeros(trials)
    est = float(hits.mean())
    se = float(hits.std(ddof=1) / math.sqrt(trials))
    bound = 10 / n**2
    return TrialReport(trials, est, se, est <= bound + 3 * se,
                       {"mean_copies": mean, "threshold": cut, "soft_bound": bound, "max_copies": float(counts.max())})

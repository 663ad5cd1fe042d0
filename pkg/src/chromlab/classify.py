"""Cloud-forest recognition, the 12-vertex gadget, and the chromatic threshold calculator."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .density import format_rational, two_density
from .graph import DomainError, Graph, SizeError, complete_graph, iter_bits, mask_of
from .solvers import DEFAULT_BUDGET, _k_coloring, chromatic_number
from .subgraphs import DEFAULT_CYCLE_BUDGET, is_cycle_graph, iter_cycles

CLOUD_MAX_VERTICES = 22


# cloud-forest recognition

@dataclass(frozen=True)
class CloudCertificate:
    cloud: tuple[int, ...]
    forest_part: tuple[int, ...]

    def to_json(self) -> dict:
        return {"cloud": list(self.cloud), "forest_part": list(self.forest_part)}


def _independent_sets_of_size(masks: list[int], n: int, size: int) -> Iterator[int]:
    """Independent sets with exactly ``size`` vertices, in lexicographic order."""

    def rec(start: int, chosen: int, banned: int, left: int) -> Iterator[int]:
        if left == 0:
            yield chosen
            return
        for v in range(start, n - left + 1):
            if not banned >> v & 1:
                yield from rec(v + 1, chosen | 1 << v, banned | masks[v], left - 1)

    yield from rec(0, 0, 0, size)


def _forest_degrees(masks: list[int], rest: int) -> dict[int, int] | None:
    """Degrees inside ``rest`` if it induces a forest, else None."""
    deg = {v: (masks[v] & rest).bit_count() for v in iter_bits(rest)}
    edges = sum(deg.values()) // 2
    # forest iff edges == vertices - components
    seen = 0
    comps = 0
    for v in iter_bits(rest):
        if seen >> v & 1:
            continue
        comps += 1
        frontier = 1 << v
        seen |= frontier
        while frontier:
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= masks[u] & rest
            frontier = nxt & ~seen
            seen |= frontier
    return deg if edges == len(deg) - comps else None


def _cloud_ok(masks: list[int], n: int, cloud: int) -> bool:
    rest = ((1 << n) - 1) & ~cloud
    deg = _forest_degrees(masks, rest)
    if deg is None:
        return False
    attached = 0
    for v in iter_bits(cloud):
        attached |= masks[v]
    for v in iter_bits(attached):
        if deg[v] > 1:
            return False
        if deg[v] == 1:
            (w,) = iter_bits(masks[v] & rest)
            if deg[w] == 1 and attached >> w & 1:
                return False
    return True


def _search_cloud(graph: Graph, odd_cycles: list[int] | None) -> CloudCertificate | None:
    n = graph.n
    if n > CLOUD_MAX_VERTICES:
        raise SizeError(f"cloud search limited to {CLOUD_MAX_VERTICES} vertices")
    masks = graph.masks
    for size in range(n + 1):
        for cloud in _independent_sets_of_size(masks, n, size):
            if odd_cycles is not None and any((c & cloud).bit_count() < 2 for c in odd_cycles):
                continue
            if _cloud_ok(masks, n, cloud):
                inside = tuple(iter_bits(cloud))
                return CloudCertificate(inside, tuple(v for v in range(n) if not cloud >> v & 1))
    return None


def is_cloud_forest(graph: Graph) -> CloudCertificate | None:
    """A cloud certificate (smallest cloud, lexicographically first) or None."""
    return _search_cloud(graph, None)


def odd_cycle_masks(graph: Graph, budget: int = DEFAULT_CYCLE_BUDGET) -> list[int]:
    return [mask_of(c) for c in iter_cycles(graph, graph.n, budget=budget) if len(c) % 2]


def is_thundercloud_forest(graph: Graph, budget: int = DEFAULT_CYCLE_BUDGET) -> CloudCertificate | None:
    """A cloud certificate whose cloud meets every odd cycle at least twice, or None."""
    if graph.n > CLOUD_MAX_VERTICES:
        raise SizeError(f"cloud search limited to {CLOUD_MAX_VERTICES} vertices")
    return _search_cloud(graph, odd_cycle_masks(graph, budget))


def check_cloud_certificate(graph: Graph, cert: CloudCertificate, thunder: bool = False) -> list[str]:
    """Re-check every clause from scratch; returns the list of failed clause names."""
    cloud = set(cert.cloud)
    rest = set(cert.forest_part)
    failed = []
    if cloud & rest or cloud | rest != set(range(graph.n)):
        failed.append("partition")
    if not graph.is_independent(cloud):
        failed.append("cloud-independent")
    forest = graph.induced_subgraph(rest)
    order = sorted(rest)
    if not forest.is_forest():
        failed.append("forest")
    fdeg = {v: forest.degree(i) for i, v in enumerate(order)}
    attached = {w for v in cloud for w in graph.adj[v]}
    if any(fdeg[w] > 1 for w in attached if w in fdeg):
        failed.append("cloud-edges-to-leaves")
    for u, v in graph.edges:
        if u in rest and v in rest and fdeg[u] == 1 and fdeg[v] == 1 and u in attached and v in attached:
            failed.append("adjacent-leaves")
            break
    if thunder:
        for cyc in iter_cycles(graph, graph.n):
            if len(cyc) % 2 and len(cloud.intersection(cyc)) < 2:
                failed.append("odd-cycles")
                break
    return failed


# the gadget

GADGET_X = 10
GADGET_Y = 11


def _gadget_edges(u: list[int], v: list[int], x: int, y: int) -> list[tuple[int, int]]:
    edges = []
    for ring in (u, v):
        edges.extend((ring[i], ring[(i + 1) % 5]) for i in range(5))
    edges += [(x, u[0]), (x, u[2]), (x, v[0]), (x, v[2])]
    edges += [(y, u[1]), (y, u[3]), (y, v[1]), (y, v[3])]
    edges.append((u[4], v[4]))
    return edges


def build_gadget() -> tuple[Graph, int, int]:
    """The 12-vertex gadget: u1..u5 are 0..4, v1..v5 are 5..9, x = 10, y = 11."""
    edges = _gadget_edges(list(range(5)), list(range(5, 10)), GADGET_X, GADGET_Y)
    return Graph(12, edges), GADGET_X, GADGET_Y


@dataclass(frozen=True)
class PairVerdict:
    """Outcome of the unequal-pair test.

    ``status`` is "forced" (every proper colouring separates the pair),
    "free" (some proper colouring merges them), "uncolorable" (no proper
    colouring at all) or "inconclusive" (search budget exhausted).
    """

    status: str
    coloring: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.status == "forced"


def _contract(graph: Graph, x: int, y: int) -> tuple[Graph, list[int]]:
    """Merge ``y`` into ``x``; returns the quotient and the vertex renaming."""
    rename = [v - (v > y) for v in range(graph.n)]
    rename[y] = rename[x]
    edges = {tuple(sorted((rename[a], rename[b]))) for a, b in graph.edges}
    return Graph(graph.n - 1, edges), rename


def verify_unequal_pair(graph: Graph, x: int, y: int, r: int, node_budget: int = DEFAULT_BUDGET) -> PairVerdict:
    graph.check_vertex(x)
    graph.check_vertex(y)
    if x == y:
        raise DomainError("x and y must be distinct")
    ok, col, _ = _k_coloring(graph, r, node_budget)
    if ok is None:
        return PairVerdict("inconclusive")
    if not ok:
        return PairVerdict("uncolorable")
    if graph.has_edge(x, y):
        return PairVerdict("forced", tuple(col))
    quotient, rename = _contract(graph, x, y)
    merged, mcol, _ = _k_coloring(quotient, r, node_budget)
    if merged is None:
        return PairVerdict("inconclusive")
    if merged:
        return PairVerdict("free", tuple(mcol[rename[v]] for v in range(graph.n)))
    return PairVerdict("forced", tuple(col))


def substitute_gadget(graph: Graph, edge: tuple[int, int]) -> Graph:
    """Replace ``edge = (a, b)`` by a gadget copy with ``a`` as x and ``b`` as y.

    The ten new vertices get ids ``n..n+9`` in the order u1..u5, v1..v5.
    """
    a, b = edge
    if not (0 <= a < graph.n and 0 <= b < graph.n) or not graph.has_edge(a, b):
        raise DomainError(f"({a}, {b}) is not an edge")
    n = graph.n
    u = list(range(n, n + 5))
    v = list(range(n + 5, n + 10))
    kept = [e for e in graph.edges if e != (min(a, b), max(a, b))]
    return Graph(n + 10, kept + _gadget_edges(u, v, a, b))


def build_k4_gadget_graph() -> Graph:
    """K4 with each of its six edges (lexicographic order) replaced by a gadget."""
    g = complete_graph(4)
    for e in complete_graph(4).edges:
        g = substitute_gadget(g, e)
    return g


# chromatic threshold calculator

@dataclass(frozen=True)
class Regime:
    """Asymptotic regime of ``p(n)``: "constant", "power" (``p = n^-alpha``) or "below-connectivity"."""

    kind: str
    alpha: Fraction | None = None

    def __post_init__(self):
        if self.kind == "power":
            if self.alpha is None or not 0 < self.alpha < 1:
                raise DomainError("power regime needs 0 < alpha < 1")
        elif self.kind in ("constant", "below-connectivity"):
            if self.alpha is not None:
                raise DomainError(f"{self.kind} regime takes no exponent")
        else:
            raise DomainError(f"unknown regime {self.kind!r}")

    @classmethod
    def power(cls, alpha) -> Regime:
        return cls("power", Fraction(alpha))

    @classmethod
    def parse(cls, text: str) -> Regime:
        t = text.strip().lower()
        if t in ("constant", "below-connectivity"):
            return cls(t)
        return cls.power(Fraction(t))


@dataclass
class ThresholdAnswer:
    lower: Fraction
    upper: Fraction
    provenance: list[str] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def to_json(self) -> dict:
        return {
            "lower": format_rational(self.lower),
            "upper": format_rational(self.upper),
            "exact": self.exact,
            "provenance": list(self.provenance),
        }


class _Bounds:
    def __init__(self):
        self.lower = Fraction(0)
        self.upper = Fraction(1)
        self.provenance: list[str] = []

    def at_least(self, value: Fraction, rule: str) -> None:
        self.lower = max(self.lower, value)
        self._note(rule)

    def at_most(self, value: Fraction, rule: str) -> None:
        self.upper = min(self.upper, value)
        self._note(rule)

    def exactly(self, value: Fraction, rule: str) -> None:
        self.lower = self.upper = value
        self.provenance.append(rule)

    def _note(self, rule: str) -> None:
        if rule not in self.provenance:
            self.provenance.append(rule)
        self._check()

    def _check(self) -> None:
        if self.lower > self.upper:
            raise AssertionError(f"contradictory rules {self.provenance}: [{self.lower}, {self.upper}]")

    def answer(self) -> ThresholdAnswer:
        return ThresholdAnswer(self.lower, self.upper, self.provenance)


def _odd_cycle_half_length(graph: Graph) -> int | None:
    """``k`` if the graph is the cycle on ``2k+1`` vertices, else None."""
    if is_cycle_graph(graph) and graph.n % 2:
        return graph.n // 2
    return None


def _constant_hull(r: int) -> tuple[Fraction, Fraction]:
    values = []
    for num, den in ((r - 3, r - 2), (2 * r - 5, 2 * r - 3), (r - 2, r - 1)):
        if den > 0:
            values.append(min(max(Fraction(num, den), Fraction(0)), Fraction(1)))
    return min(values), max(values)


def chromatic_threshold(graph: Graph, regime: Regime) -> ThresholdAnswer:
    """Tightest interval for the chromatic threshold implied by the encoded rules.

    Provenance lists rule identifiers in the order they fired. Regime
    boundaries never produce exact answers.
    """
    if graph.n < 3 or graph.m == 0:
        raise DomainError("needs at least 3 vertices and one edge")
    b = _Bounds()
    if regime.kind == "below-connectivity":
        b.exactly(Fraction(0), "below-connectivity")
        return b.answer()

    chi = chromatic_number(graph)
    c = chi.value
    k = _odd_cycle_half_length(graph)
    is_triangle = graph.n == 3 and graph.m == 3

    if regime.kind == "constant":
        if k is not None and k >= 2:
            b.exactly(Fraction(0), "constant-odd-cycle")
        elif is_triangle:
            b.exactly(Fraction(1, 3), "constant-triangle")
        elif graph.m == graph.n * (graph.n - 1) // 2:
            r = graph.n
            b.exactly(Fraction(2 * r - 5, 2 * r - 3), "constant-complete")
        elif c is None:
            b.provenance.append("chromatic-number-undecided")
        else:
            lo, hi = _constant_hull(c)
            b.at_least(lo, "constant-hull")
            b.at_most(hi, "constant-hull")
        return b.answer()

    alpha = regime.alpha
    m2 = two_density(graph)
    if m2 > 1:
        inv = 1 / m2
        if alpha > inv:
            b.exactly(Fraction(1), "copy-deletion")
            return b.answer()
        if alpha == inv:
            b.provenance.append("open-boundary")
            return b.answer()
    # from here on alpha < 1/m2 (automatic when m2 <= 1)
    if c is None:
        b.provenance.append("chromatic-number-undecided")
        return b.answer()
    pi = 1 - Fraction(1, c - 1)
    b.at_most(pi, "sparse-turan-upper")
    if c >= 5 or c == 2 or (c == 4 and m2 >= 2):
        b.at_least(pi, "sparse-turan-exact")
    if c >= 4 and alpha < Fraction(1, 2):
        b.at_least(pi, "planted-partite-lower")
    if c == 3:
        half = Fraction(1, 2)
        if alpha < half:
            try:
                cloud = is_cloud_forest(graph)
                thunder = is_thundercloud_forest(graph) if cloud is not None else None
            except SizeError:
                b.provenance.append("cloud-search-skipped")
            else:
                if cloud is None:
                    b.at_least(half, "non-cloud-forest-lower")
                elif thunder is None:
                    b.at_least(Fraction(1, 3), "cloud-forest-lower")
        if k is not None and k >= 2 and alpha > Fraction(2 * k - 3, 2 * k - 2):
            b.at_least(half, "odd-cycle-process-lower")
        if k == 2 and alpha < half:
            b.at_most(Fraction(1, 3), "pentagon-robust-upper")
        if k is not None and k >= 3 and alpha < half:
            b.at_most(Fraction(0), "long-odd-cycle-zero")
    if b.lower != b.upper:
        b.provenance.append("open-range")
    return b.answer()


"""Seeded random graphs and the randomized lower-bound constructions with certificates."""

from __future__ import annotations

import bisect
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from .classify import is_cloud_forest, is_thundercloud_forest
from .density import densest_balanced_subgraph, format_rational, two_density
from .graph import DomainError, Graph, SizeError, girth, iter_bits, mask_of, min_degree, parse_graph
from .solvers import chromatic_number, is_k_colorable, max_independent_set, odd_cycle
from .subgraphs import contains_copy, enumerate_copies, find_path_of_length, iter_cycles

DEFAULT_EPS = Fraction(1, 10)
DEFAULT_GAMMA = Fraction(1, 10)
CORE_SEARCH_TRIALS = 1000
EXPANSION_EXACT_MAX = 24


class ParameterError(DomainError):
    """Parameters make the requested search impossible."""


class ConstructionError(RuntimeError):
    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(int(seed) & (2**64 - 1))


def _check_probability(p) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability {p} outside [0, 1]")
    return p


# samplers

def sample_gnp(n: int, p, seed: int) -> Graph:
    """G(n, p): row ``u`` draws ``n-u-1`` uniforms for the pairs ``(u, u+1..n-1)``."""
    p = _check_probability(p)
    if n < 1:
        raise DomainError("n must be at least 1")
    rng = _rng(seed)
    edges = []
    for u in range(n - 1):
        hits = np.flatnonzero(rng.random(n - u - 1) < p)
        edges.extend((u, u + 1 + int(j)) for j in hits)
    return Graph(n, edges)


def _pair_from_index(n: int, starts: list[int], idx: int) -> tuple[int, int]:
    u = bisect.bisect_right(starts, idx) - 1
    return u, u + 1 + idx - starts[u]


def sample_gnm(m: int, edges: int, seed: int) -> Graph:
    """Uniform graph with ``m`` vertices and ``edges`` edges (partial Fisher-Yates)."""
    total = m * (m - 1) // 2
    if not 0 <= edges <= total:
        raise DomainError(f"edge count {edges} outside [0, {total}]")
    rng = _rng(seed)
    swapped: dict[int, int] = {}
    chosen = []
    for i in range(edges):
        j = int(rng.integers(i, total))
        chosen.append(swapped.get(j, j))
        swapped[j] = swapped.get(i, i)
    starts = []
    acc = 0
    for u in range(m):
        starts.append(acc)
        acc += m - u - 1
    return Graph(m, (_pair_from_index(m, starts, idx) for idx in chosen))


# high girth cores

def high_girth_deletion(graph: Graph, k: int) -> Graph:
    """Delete one edge from every cycle of length at most ``k``.

    Lengths are handled in increasing order. Among the intact cycles of the
    current length, the one whose least edge is lexicographically greatest
    goes first, and that least edge is deleted. Deleting edges never creates
    cycles, so the result has girth greater than ``k``. Taking late edges
    first spreads the deletions out instead of stripping one vertex bare.
    """
    if k < 3:
        raise DomainError("k must be at least 3")
    current = graph
    for length in range(3, k + 1):
        cycles = []
        by_edge: dict[tuple[int, int], list[int]] = {}
        for cyc in iter_cycles(current, length, min_len=length, budget=10**9):
            cyc_edges = [tuple(sorted((cyc[i], cyc[(i + 1) % length]))) for i in range(length)]
            for e in cyc_edges:
                by_edge.setdefault(e, []).append(len(cycles))
            cycles.append(min(cyc_edges))
        alive = [True] * len(cycles)
        drop = []
        for idx in sorted(range(len(cycles)), key=lambda i: cycles[i], reverse=True):
            if not alive[idx]:
                continue
            e = cycles[idx]
            drop.append(e)
            for j in by_edge[e]:
                alive[j] = False
        if drop:
            current = current.remove_edges(drop)
    return current


@dataclass
class Core:
    """A small high-girth subgraph placed on host vertices ``vertices`` (sorted)."""

    vertices: list[int]
    graph: Graph
    girth: float | int
    chi_lower: int
    alpha_upper: int
    flags: list[str] = field(default_factory=list)

    def host_edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[a], vs[b]) for a, b in self.graph.edges]


def chromatic_lower_bound(graph: Graph, node_budget: int = 10**6) -> tuple[int, int]:
    """``(chi_lower, alpha_upper)`` from an independence bound and an odd cycle."""
    if graph.n == 0:
        return 0, 0
    mis = max_independent_set(graph, node_budget)
    alpha_upper = max(mis.upper, 1)
    lower = -(-graph.n // alpha_upper)
    if graph.m:
        lower = max(lower, 2)
    if odd_cycle(graph) is not None:
        lower = max(lower, 3)
    return lower, alpha_upper


def _make_core(host: Graph, vertices: Sequence[int], k: int, flags: list[str]) -> Core:
    vs = sorted(vertices)
    sub = high_girth_deletion(host.induced_subgraph(vs), k) if len(vs) >= 3 else host.induced_subgraph(vs)
    chi_lower, alpha_upper = chromatic_lower_bound(sub)
    return Core(vs, sub, girth(sub), chi_lower, alpha_upper, flags)


def core_size(eps, p) -> int:
    p = float(p)
    if p <= 0:
        raise ParameterError("core size undefined for p = 0")
    return math.ceil(float(eps) / p)


def find_small_core(graph: Graph, k: int, eps, p, seed: int, trials: int = CORE_SEARCH_TRIALS) -> Core | None:
    """Random search for an ``m``-set with at least ``k*k*m`` edges, ``m = ceil(eps/p)``.

    A hit is thinned by :func:`high_girth_deletion`. Returns None when no set
    qualifies within ``trials`` draws.
    """
    m = core_size(eps, p)
    if m > graph.n:
        raise ParameterError(f"core size {m} exceeds {graph.n} vertices")
    need = k * k * m
    if m * (m - 1) // 2 < need:
        raise ParameterError(f"an {m}-set has at most {m * (m - 1) // 2} < {need} edges")
    rng = _rng(seed)
    for _ in range(trials):
        sample = rng.choice(graph.n, size=m, replace=False)
        if graph.edges_within(int(v) for v in sample) >= need:
            return _make_core(graph, [int(v) for v in sample], k, [])
    return None


def _dense_growth(graph: Graph, pool: Sequence[int], m: int, seed: int) -> list[int]:
    """Grow a set from a random start, always adding the pool vertex with most neighbours inside."""
    pool_mask = mask_of(pool)
    masks = graph.masks
    rng = _rng(seed)
    start = int(pool[int(rng.integers(len(pool)))])
    inside = 1 << start
    gain = {}
    for v in pool:
        gain[v] = 0
    for w in iter_bits(masks[start] & pool_mask):
        gain[w] += 1
    del gain[start]
    while inside.bit_count() < m and gain:
        best = max(gain, key=lambda v: (gain[v], -v))
        inside |= 1 << best
        del gain[best]
        for w in iter_bits(masks[best] & pool_mask & ~inside):
            gain[w] += 1
    return list(iter_bits(inside))


def obtain_core(graph: Graph, pool: Sequence[int], k: int, eps, p, seed: int) -> Core:
    """Core inside ``pool``: the random search first, then the dense-growth fallback (flagged)."""
    sub = graph.induced_subgraph(pool)
    order = sorted(pool)
    flags: list[str] = []
    try:
        found = find_small_core(sub, k, eps, p, seed)
    except ParameterError as exc:
        found = None
        flags.append(f"core-search-skipped: {exc}")
    if found is not None:
        found.vertices = [order[v] for v in found.vertices]
        return found
    flags.append("fallback-core")
    m = min(core_size(eps, p), len(order)) if float(p) > 0 else len(order)
    if not order or m == 0:
        return Core([], Graph(0), math.inf, 0, 0, flags)
    chosen = _dense_growth(graph, order, m, seed)
    return _make_core(graph, chosen, k, flags)


def check_cross_expansion(graph: Graph, eps, mode: str = "exact", trials: int = 1000, seed: int = 0) -> bool:
    """Every pair of disjoint vertex sets of size ``ceil(eps*v)`` spans an edge.

    ``mode="exact"`` enumerates all sets (up to 24 vertices); ``"sampled"``
    only tries random pairs and can only refute.
    """
    n = graph.n
    t = max(1, math.ceil(Fraction(eps) * n))
    if 2 * t > n:
        return True
    masks = graph.masks
    full = (1 << n) - 1
    if mode == "exact":
        if n > EXPANSION_EXACT_MAX:
            raise SizeError(f"exact expansion check limited to {EXPANSION_EXACT_MAX} vertices")
        for a in combinations(range(n), t):
            am = mask_of(a)
            nb = 0
            for v in a:
                nb |= masks[v]
            if (full & ~am & ~nb).bit_count() >= t:
                return False
        return True
    if mode != "sampled":
        raise DomainError(f"unknown mode {mode!r}")
    for trial in range(trials):
        rng = _rng(seed ^ trial)
        perm = rng.permutation(n)
        a = [int(v) for v in perm[:t]]
        bm = mask_of(int(v) for v in perm[t:2 * t])
        if not any(masks[v] & bm for v in a):
            return False
    return True


# certificates

@dataclass
class Certificate:
    h_free: bool | str | None = None
    witness: list[int] | None = None
    min_degree: int | None = None
    degree_target: float | None = None
    chi_lower_witness: dict = field(default_factory=dict)
    subset_checks: list[dict] = field(default_factory=list)
    extras: dict = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)

    @property
    def degree_ok(self) -> bool | None:
        if self.min_degree is None or self.degree_target is None:
            return None
        return self.min_degree >= self.degree_target

    def subset_pass_count(self) -> tuple[int, int]:
        return sum(1 for c in self.subset_checks if c["passed"]), len(self.subset_checks)

    def to_json(self) -> dict:
        out = asdict(self)
        out["degree_ok"] = self.degree_ok
        return out


@dataclass
class Construction:
    graph: Graph
    certificate: Certificate
    layout: dict


def grow_subset(graph: Graph, size: int, rng: np.random.Generator) -> list[int]:
    """Random connected-ish vertex set: BFS-style growth from a random start."""
    n = graph.n
    size = min(size, n)
    chosen: list[int] = []
    inside: set[int] = set()
    boundary: list[int] = []
    in_boundary: set[int] = set()
    while len(chosen) < size:
        if boundary:
            i = int(rng.integers(len(boundary)))
            boundary[i], boundary[-1] = boundary[-1], boundary[i]
            v = boundary.pop()
            in_boundary.discard(v)
        else:
            v = int(rng.integers(n))
            while v in inside:
                v = int(rng.integers(n))
        chosen.append(v)
        inside.add(v)
        for w in sorted(graph.adj[v]):
            if w not in inside and w not in in_boundary:
                boundary.append(w)
                in_boundary.add(w)
    return sorted(chosen)


def sample_subset_checks(
    graph: Graph,
    size: int,
    trials: int,
    seed: int,
    name: str,
    predicate: Callable[[Graph], bool],
) -> list[dict]:
    checks = []
    for trial in range(trials):
        vs = grow_subset(graph, size, _rng(seed ^ trial))
        checks.append({"vertices": vs, "property": name, "passed": bool(predicate(graph.induced_subgraph(vs)))})
    return checks


def certify(
    graph: Graph,
    pattern: Graph | None = None,
    d=None,
    p=None,
    n: int | None = None,
    subset_size: int = 0,
    trials: int = 0,
    seed: int = 0,
) -> Certificate:
    """Fill a certificate by direct computation.

    ``pattern`` freeness is exact. With ``subset_size`` and ``trials``,
    random subsets report an independence-based chromatic lower bound.
    """
    cert = Certificate()
    if pattern is not None:
        found, wit = contains_copy(graph, pattern)
        cert.h_free = not found
        cert.witness = list(wit) if found else None
    if graph.n:
        cert.min_degree = min_degree(graph)
    if d is not None and p is not None:
        cert.degree_target = float(Fraction(d)) * float(p) * (n if n is not None else graph.n)
    cyc = odd_cycle(graph)
    cert.chi_lower_witness = {"chi_lower": 3 if cyc else (2 if graph.m else 1), "odd_cycle": cyc}
    if subset_size and trials:
        best = cert.chi_lower_witness["chi_lower"]
        for trial in range(trials):
            vs = grow_subset(graph, subset_size, _rng(seed ^ trial))
            sub = graph.induced_subgraph(vs)
            mis = max_independent_set(sub)
            bound = -(-sub.n // max(mis.upper, 1))
            cert.subset_checks.append(
                {"vertices": vs, "property": "alpha-bound", "passed": True, "alpha": mis.upper, "chi_lower": bound}
            )
            best = max(best, bound)
        cert.chi_lower_witness["chi_lower"] = best
    return cert


def _core_evidence(core: Core) -> dict:
    return {
        "core_vertices": len(core.vertices),
        "core_edges": core.graph.m,
        "core_girth": core.girth if core.girth != math.inf else "inf",
        "chi_lower": core.chi_lower,
        "alpha_upper": core.alpha_upper,
    }


def _split(items: Sequence[int], parts: int) -> list[list[int]]:
    """Contiguous floor-sized parts; the remainder goes to the last part."""
    size = len(items) // parts
    out = [list(items[i * size:(i + 1) * size]) for i in range(parts - 1)]
    out.append(list(items[(parts - 1) * size:]))
    return out


def _independent_exact(graph: Graph, vertices) -> bool:
    return graph.is_independent(vertices)


# the constructions

def construct_rpartite_plant(n: int, p, r: int, s: int, eps=DEFAULT_EPS, seed: int = 0,
                             gamma=DEFAULT_GAMMA, trials: int = 100) -> Construction:
    """High-girth core planted in an (r-1)-partite subgraph of G(n, p)."""
    if r < 4 or s < 1:
        raise DomainError("needs r >= 4 and s >= 1")
    base = sample_gnp(n, p, seed)
    nx_ = n // (r - 1)
    X = list(range(nx_))
    Y = list(range(nx_, n))
    core = obtain_core(base, X, s + 1, eps, p, seed)
    core_set = set(core.vertices)
    ymask = mask_of(Y)
    masks = base.masks
    I = {u: list(iter_bits(masks[u] & ymask)) for u in core.vertices}
    covered = set().union(*I.values()) if I else set()
    V1 = sorted((set(X) - core_set) | covered)
    rest = [y for y in Y if y not in covered]
    parts = [V1] + _split(rest, r - 2)
    label = [0] * n
    for i, part in enumerate(parts, start=1):
        for v in part:
            label[v] = i
    edges = set(core.host_edges())
    for u, vs in I.items():
        edges.update((u, v) if u < v else (v, u) for v in vs)
    edges.update(e for e in base.edges if label[e[0]] and label[e[1]] and label[e[0]] != label[e[1]])
    g = Graph(n, edges)

    cert = Certificate(flags=list(core.flags))
    cert.min_degree = min_degree(g)
    cert.degree_target = float(Fraction(r - 2, r - 1) - Fraction(gamma)) * float(p) * n
    cert.chi_lower_witness = dict(_core_evidence(core), kind="high-girth core")
    cert.subset_checks = sample_subset_checks(
        g, s, trials, seed, f"{r - 1}-colorable", lambda h: bool(is_k_colorable(h, r - 1))
    )
    cert.extras = {
        "parts_independent": [_independent_exact(g, part) for part in parts],
        "core_neighbours_in_V1": all(w in core_set or label[w] == 1 for u in core.vertices for w in g.adj[u]),
    }
    layout = {"X": X, "Y": Y, "core": core.vertices, "parts": parts, "I": {str(u): v for u, v in I.items()}}
    return Construction(g, cert, layout)


def construct_copy_deletion(n: int, p, pattern: Graph, seed: int, gamma=DEFAULT_GAMMA,
                            copy_limit: int = 10**6, subset_size: int = 20, trials: int = 20) -> Construction:
    """G(n, p) minus the least edge of every copy of a densest 2-balanced piece of ``pattern``."""
    p_float = _check_probability(p)
    base = sample_gnp(n, p_float, seed)
    flags: list[str] = []
    m2 = two_density(pattern)
    if m2 <= 1:
        flags.append("vacuous-forest")
        forbidden = None
    elif p_float > 0 and p_float >= math.log(n) ** (2 * pattern.m + 5) / n:
        forbidden = densest_balanced_subgraph(pattern)[0]
    else:
        cyc = _shortest_cycle(pattern)
        forbidden = Graph(len(cyc), [(i, (i + 1) % len(cyc)) for i in range(len(cyc))])
        flags.append("shortest-cycle-piece")
    deleted: set[tuple[int, int]] = set()
    if forbidden is not None:
        copies = enumerate_copies(base, forbidden, limit=copy_limit)
        deleted = {c[0] for c in copies}
    g = base.remove_edges(deleted)

    cert = certify(g, forbidden, d=1 - 2 * Fraction(gamma), p=p_float, n=n,
                   subset_size=subset_size, trials=trials, seed=seed)
    cert.flags = flags
    cert.extras = {"deleted_edges": len(deleted), "piece_vertices": forbidden.n if forbidden else 0,
                   "m2": format_rational(m2)}
    if forbidden is not None and pattern.n <= 8:
        cert.extras["pattern_free"] = not contains_copy(g, pattern)[0]
    layout = {"deleted": sorted(deleted), "piece_edges": list(forbidden.edges) if forbidden else []}
    return Construction(g, cert, layout)


def _shortest_cycle(graph: Graph) -> tuple[int, ...]:
    best = None
    for cyc in iter_cycles(graph, graph.n):
        if best is None or len(cyc) < len(best):
            best = cyc
            if len(best) == 3:
                break
    if best is None:
        raise DomainError("pattern has no cycle")
    return best


def _exclusive_neighbourhoods(base: Graph, core: Core, Y: Sequence[int]) -> dict[int, list[int]]:
    core_mask = mask_of(core.vertices)
    masks = base.masks
    I: dict[int, list[int]] = {u: [] for u in core.vertices}
    for y in Y:
        hit = masks[y] & core_mask
        if hit and hit & (hit - 1) == 0:
            I[hit.bit_length() - 1].append(y)
    return I


def construct_cloud(n: int, p, s: int, gamma=DEFAULT_GAMMA, seed: int = 0, eps=DEFAULT_EPS,
                    trials: int = 100) -> Construction:
    """Core whose vertices keep exclusive neighbourhoods in the other half; halves joined bipartitely."""
    base = sample_gnp(n, p, seed)
    X = list(range(n // 2))
    Y = list(range(n // 2, n))
    core = obtain_core(base, X, s + 1, eps, p, seed)
    core_set = set(core.vertices)
    I = _exclusive_neighbourhoods(base, core, Y)
    covered = set().union(*I.values()) if I else set()
    V1 = sorted((set(X) - core_set) | covered)
    V2 = [y for y in Y if y not in covered]
    side = [0] * n
    for v in V1:
        side[v] = 1
    for v in V2:
        side[v] = 2
    edges = set(core.host_edges())
    for u, vs in I.items():
        edges.update((u, v) if u < v else (v, u) for v in vs)
    edges.update(e for e in base.edges if {side[e[0]], side[e[1]]} == {1, 2})
    g = Graph(n, edges)

    cert = Certificate(flags=list(core.flags))
    cert.min_degree = min_degree(g)
    cert.degree_target = float(Fraction(1, 2) - Fraction(gamma)) * float(p) * n
    cert.chi_lower_witness = dict(_core_evidence(core), kind="high-girth core")
    cert.subset_checks = sample_subset_checks(g, s, trials, seed, "cloud-forest", lambda h: is_cloud_forest(h) is not None)
    sizes = sum(len(v) for v in I.values())
    cert.extras = {
        "I_disjoint": sizes == len(covered) and covered <= set(Y),
        "V1_independent": _independent_exact(g, V1),
        "V2_independent": _independent_exact(g, V2),
    }
    layout = {"X": X, "Y": Y, "core": core.vertices, "V1": V1, "V2": V2, "I": {str(u): v for u, v in I.items()}}
    return Construction(g, cert, layout)


# host partitions

@dataclass
class HostPartition:
    host: Graph
    A: list[int]
    B: list[int]
    C: list[int]
    s: int
    gamma: Fraction

    def to_text(self) -> str:
        lines = [self.host.to_text().rstrip("\n")]
        for name in ("A", "B", "C"):
            lines.append(f"{name}: " + " ".join(map(str, getattr(self, name))))
        lines.append(f"{self.s} {format_rational(self.gamma)}")
        return "\n".join(lines) + "\n"


def parse_host_partition(text: str) -> HostPartition:
    lines = [ln.strip() for ln in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    if len(lines) < 5:
        raise DomainError("host partition needs a graph, three part lines and 's gamma'")
    header = lines[0].split()
    if len(header) != 2:
        raise DomainError("bad graph header")
    m = int(header[1])
    graph = parse_graph("\n".join(lines[: m + 1]))
    tail = lines[m + 1:]
    if len(tail) != 4:
        raise DomainError(f"expected 4 lines after the edge list, found {len(tail)}")
    parts = {}
    for line, name in zip(tail[:3], "ABC"):
        key, _, ids = line.partition(":")
        if key.strip() != name:
            raise DomainError(f"expected line '{name}: ...', got {line!r}")
        parts[name] = [int(t) for t in ids.split()]
    s_text, g_text = tail[3].split()
    return HostPartition(graph, parts["A"], parts["B"], parts["C"], int(s_text), Fraction(g_text))


def read_host_partition(path) -> HostPartition:
    with open(path, encoding="utf-8") as fh:
        return parse_host_partition(fh.read())


def demo_host() -> HostPartition:
    """Ten vertices: A = {0, 1} (an edge), B = 2..5, C = 6..9, B-C complete, A-B complete."""
    A, B, C = [0, 1], [2, 3, 4, 5], [6, 7, 8, 9]
    edges = [(0, 1)] + [(a, b) for a in A for b in B] + [(b, c) for b in B for c in C]
    return HostPartition(Graph(10, edges), A, B, C, 2, Fraction(2, 5))


@dataclass
class HostReport:
    clauses: dict[str, str]

    def __bool__(self) -> bool:
        return all(v == "pass" for v in self.clauses.values())


def verify_host(hp: HostPartition, cycle_budget: int = 10**6) -> HostReport:
    """Clause-by-clause check of a host partition."""
    h = hp.host
    A, B, C = set(hp.A), set(hp.B), set(hp.C)
    res: dict[str, str] = {}
    ok_partition = not (A & B or A & C or B & C) and A | B | C == set(range(h.n)) \
        and len(hp.A) + len(hp.B) + len(hp.C) == h.n
    res["partition"] = "pass" if ok_partition else "fail"

    chi_a = chromatic_number(h.induced_subgraph(A)) if A else None
    if chi_a is not None and not chi_a.exact:
        res["a"] = "pass" if chi_a.lower >= hp.s and len(A) <= hp.gamma * h.n else "inconclusive"
    else:
        chi_val = chi_a.value if chi_a else 0
        res["a"] = "pass" if len(A) <= hp.gamma * h.n and chi_val >= hp.s else "fail"
    res["b"] = "pass" if h.is_independent(B) and h.is_independent(C) else "fail"
    no_ac = all(not (h.adj[a] & C) for a in A)
    full_bc = all(h.has_edge(b, c) for b in B for c in C)
    res["c"] = "pass" if no_ac and full_bc else "fail"
    try:
        bad = any(
            len(cyc) % 2 and len(B.intersection(cyc)) < 2
            for cyc in iter_cycles(h, hp.s, budget=cycle_budget)
        )
        res["d"] = "fail" if bad else "pass"
    except SizeError:
        res["d"] = "inconclusive"
    res["min-degree"] = "pass" if h.n and min_degree(h) >= (Fraction(1, 3) - hp.gamma) * h.n else "fail"
    return HostReport(res)


def _block_map(sources: Sequence[int], targets: Sequence[int]) -> dict[int, int]:
    """Contiguous blocks; the first ``len(sources) % len(targets)`` targets take one extra."""
    q, rem = divmod(len(sources), len(targets))
    out = {}
    i = 0
    for j, t in enumerate(targets):
        for _ in range(q + (1 if j < rem else 0)):
            out[sources[i]] = t
            i += 1
    return out


def construct_thundercloud(n: int, p, s: int, gamma, hp: HostPartition, seed: int,
                           eps=DEFAULT_EPS, trials: int = 100) -> Construction:
    """Core and the first two thirds mapped onto a verified host; edges kept only along host edges."""
    report = verify_host(hp)
    if not report:
        raise ConstructionError("host partition failed verification", {"clauses": report.clauses})
    base = sample_gnp(n, p, seed)
    X = list(range(2 * n // 3))
    Y = list(range(2 * n // 3, n))
    core = obtain_core(base, X, s + 1, eps, p, seed)
    core_set = set(core.vertices)
    I = _exclusive_neighbourhoods(base, core, Y)
    covered = set().union(*I.values()) if I else set()
    V1 = [x for x in X if x not in core_set]
    V2 = [y for y in Y if y not in covered]
    phi = _block_map(core.vertices, sorted(hp.A)) if core.vertices else {}
    phi.update(_block_map(V1, sorted(hp.B)))
    owner = {v: u for u, vs in I.items() for v in vs}
    hadj = hp.host.adj
    v1_set, v2_set = set(V1), set(V2)

    edges = {e for e in core.host_edges() if phi[e[1]] in hadj[phi[e[0]]]}
    for u, vs in I.items():
        edges.update((u, v) if u < v else (v, u) for v in vs)
    for a, b in base.edges:
        if a in owner and b in v1_set or b in owner and a in v1_set:
            v, w = (a, b) if a in owner else (b, a)
            if phi[w] in hadj[phi[owner[v]]]:
                edges.add((a, b))
        elif a in v1_set and b in v2_set or b in v1_set and a in v2_set:
            edges.add((a, b))
    g = Graph(n, edges)

    cert = Certificate(flags=list(core.flags))
    cert.min_degree = min_degree(g)
    cert.degree_target = float(Fraction(1, 3) - 3 * Fraction(gamma)) * float(p) * n
    cert.chi_lower_witness = dict(_core_evidence(core), kind="high-girth core mapped onto host")
    cert.subset_checks = sample_subset_checks(
        g, s, trials, seed, "thundercloud-forest", lambda h: is_thundercloud_forest(h) is not None
    )
    core_edges_ok = all(
        phi[b] in hadj[phi[a]] for a, b in g.edges if a in core_set and b in core_set
    )
    cert.extras = {"V1_independent": _independent_exact(g, V1), "core_edges_follow_host": core_edges_ok,
                   "host_clauses": report.clauses}
    layout = {"X": X, "Y": Y, "core": core.vertices, "V1": V1, "V2": V2,
              "I": {str(u): v for u, v in I.items()}, "phi": {str(k): v for k, v in sorted(phi.items())}}
    return Construction(g, cert, layout)


# the greedy cycle-avoiding process

def default_omega(n: int) -> int:
    return max(1, math.ceil(math.log(math.log(n)))) if n > 2 else 1


def _has_path4(masks: list[int], x: int, y: int) -> bool:
    """Simple path x-a-b-c-y, by bitmask unions over the neighbours of ``y``."""
    ends = (1 << x) | (1 << y)
    C = masks[y] & ~(1 << x)
    ones = twos = 0
    for c in iter_bits(C):
        twos |= ones & masks[c]
        ones |= masks[c]
    for a in iter_bits(masks[x] & ~(1 << y)):
        reach = twos if C >> a & 1 else ones
        if masks[a] & reach & ~ends:
            return True
    return False


def _greedy_core(base: Graph, pool: list[int], k: int, omega: int) -> tuple[list[int], list[tuple[int, int]]]:
    sub = base.induced_subgraph(pool)
    keep = {v for v in range(sub.n) if sub.degree(v) <= 2 * omega}
    sub2 = sub.induced_subgraph(keep)
    order = sorted(keep)
    removed: set[int] = set()
    for cyc in iter_cycles(sub2, 3 * k, budget=10**9):
        if removed.isdisjoint(cyc):
            removed.add(min(cyc))
    final = [order[v] for v in range(sub2.n) if v not in removed]
    verts = [pool[v] for v in final]
    vset = set(verts)
    edges = [(a, b) for a, b in base.edges if a in vset and b in vset]
    return verts, edges


def greedy_cycle_process(n: int, p, k: int, omega: int | None = None, seed: int = 0,
                         gamma=DEFAULT_GAMMA) -> Construction:
    """Bounded-degree high-girth core, then X-Y edges of G(n, p) added greedily while avoiding C_{2k+1}."""
    if k < 2:
        raise DomainError("k must be at least 2")
    p_float = _check_probability(p)
    omega = default_omega(n) if omega is None else omega
    base = sample_gnp(n, p_float, seed)
    X = list(range(n // 2))
    Y = list(range(n // 2, n))
    size = len(X) if p_float == 0 else min(len(X), math.floor(omega / p_float))
    core_vertices, core_edges = _greedy_core(base, X[:size], k, omega)
    core_set = set(core_vertices)

    masks = [0] * n
    for a, b in core_edges:
        masks[a] |= 1 << b
        masks[b] |= 1 << a
    deg_core = [0] * n
    length = 2 * k
    ymask = mask_of(Y)
    candidates = []
    for x in X:
        for y in iter_bits(base.masks[x] & ymask):
            candidates.append((0 if x in core_set else 1, x, y))
    candidates.sort()
    accepted = 0
    rejected_cycle = rejected_degree = 0
    adj_sets: list[set[int]] | None = None if length == 4 else [set() for _ in range(n)]
    if adj_sets is not None:
        for a, b in core_edges:
            adj_sets[a].add(b)
            adj_sets[b].add(a)
    for group, x, y in candidates:
        in_core = group == 0
        if in_core and deg_core[y] + 1 > 2 * omega:
            rejected_degree += 1
            continue
        if length == 4:
            closes = _has_path4(masks, x, y)
        else:
            closes = find_path_of_length(adj_sets, x, y, length) is not None
        if closes:
            rejected_cycle += 1
            continue
        masks[x] |= 1 << y
        masks[y] |= 1 << x
        if adj_sets is not None:
            adj_sets[x].add(y)
            adj_sets[y].add(x)
        if in_core:
            deg_core[y] += 1
        accepted += 1
    edges = list(core_edges) + [(x, y) for x in range(n) for y in iter_bits(masks[x]) if x < y and not (x in core_set and y in core_set)]
    g = Graph(n, edges)

    cyc_len = 2 * k + 1
    pattern = Graph(cyc_len, [(i, (i + 1) % cyc_len) for i in range(cyc_len)])
    cert = certify(g, pattern, d=Fraction(1, 2) - 2 * Fraction(gamma), p=p_float, n=n)
    core_graph = g.induced_subgraph(core_vertices)
    chi_lower, alpha_upper = chromatic_lower_bound(core_graph) if core_vertices else (0, 0)
    cert.chi_lower_witness = {"kind": "bounded-degree high-girth core", "core_vertices": len(core_vertices),
                              "core_edges": core_graph.m, "chi_lower": chi_lower, "alpha_upper": alpha_upper}
    cert.extras = {"accepted": accepted, "rejected_cycle": rejected_cycle, "rejected_degree": rejected_degree,
                   "omega": omega, "core_girth": girth(core_graph) if core_vertices else "inf"}
    if cert.extras["core_girth"] == math.inf:
        cert.extras["core_girth"] = "inf"
    layout = {"X": X, "Y": Y, "core": core_vertices}
    return Construction(g, cert, layout)

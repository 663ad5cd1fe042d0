"""Robust second neighbourhoods, class partitions, reduced graphs and a regularity refuter.

The vertex classes ``X_i`` are built from common-neighbour counts: a vertex
joins class ``i`` when enough of part ``i`` shares many neighbours with it.
Counts come from a sparse matrix square; a plain-Python route exists for
cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy import sparse

from .graph import DomainError, Graph, SizeError, mask_of

EXHAUSTIVE_REGULARITY_MAX = 8


@dataclass
class Partition:
    """Parts ``V_1..V_k`` plus an optional exceptional set ``V_0``."""

    parts: list[list[int]]
    exceptional: list[int] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.parts)

    def validate(self, n: int) -> None:
        seen: set[int] = set()
        total = len(self.exceptional) + sum(len(p) for p in self.parts)
        for v in self.exceptional:
            seen.add(v)
        for part in self.parts:
            seen.update(part)
        if len(seen) != total or seen != set(range(n)):
            raise DomainError("partition parts must be disjoint and cover every vertex")


def random_equipartition(n: int, k: int, seed: int) -> Partition:
    """Seeded shuffle cut into ``k`` parts whose sizes differ by at most one."""
    if k < 1 or k > max(n, 1):
        raise DomainError("need 1 <= k <= n")
    perm = np.random.default_rng(seed).permutation(n)
    return Partition([sorted(int(v) for v in chunk) for chunk in np.array_split(perm, k)])


def _parse_rule(rule: str) -> str:
    if rule not in ("c5", "long"):
        raise DomainError(f"unknown class rule {rule!r}; use 'c5' or 'long'")
    return rule


@dataclass
class ClassAssignment:
    classes: list[list[int]]
    x0: list[int]
    rule: str
    verdict: str | None = None

    @property
    def k(self) -> int:
        return len(self.classes)

    def coloring(self, n: int) -> list[int] | None:
        """Class index as colour, or None while ``X_0`` is non-empty."""
        if self.x0:
            return None
        col = [-1] * n
        for i, cls in enumerate(self.classes):
            for v in cls:
                col[v] = i
        return col

    def to_json(self) -> dict:
        return {"k": self.k, "classes": self.classes, "x0": self.x0, "rule": self.rule, "verdict": self.verdict}


def robust_second_neighborhood(graph: Graph, v: int, threshold: int) -> set[int]:
    """Vertices other than ``v`` sharing at least ``threshold`` neighbours with it."""
    graph.check_vertex(v)
    if threshold < 1:
        raise DomainError("threshold must be at least 1")
    counts: dict[int, int] = {}
    for u in graph.adj[v]:
        for w in graph.adj[u]:
            if w != v:
                counts[w] = counts.get(w, 0) + 1
    return {w for w, c in counts.items() if c >= threshold}


def _adjacency_matrix(graph: Graph) -> sparse.csr_matrix:
    if graph.m == 0:
        return sparse.csr_matrix((graph.n, graph.n), dtype=np.int32)
    e = np.asarray(graph.edges, dtype=np.int64)
    rows = np.concatenate([e[:, 0], e[:, 1]])
    cols = np.concatenate([e[:, 1], e[:, 0]])
    data = np.ones(len(rows), dtype=np.int32)
    return sparse.csr_matrix((data, (rows, cols)), shape=(graph.n, graph.n))


def part_hit_counts(graph: Graph, partition: Partition, threshold: int) -> np.ndarray:
    """``counts[v, i] = |N*_2(v) ∩ V_i|`` via a sparse common-neighbour matrix."""
    n = graph.n
    if threshold < 1:
        raise DomainError("threshold must be at least 1")
    adj = _adjacency_matrix(graph)
    common = (adj @ adj).tocoo()
    keep = (common.data >= threshold) & (common.row != common.col)
    robust = sparse.csr_matrix(
        (np.ones(int(keep.sum()), dtype=np.int32), (common.row[keep], common.col[keep])), shape=(n, n)
    )
    member = np.zeros((n, partition.k), dtype=np.int32)
    for i, part in enumerate(partition.parts):
        member[part, i] = 1
    return np.asarray(robust @ member)


def part_hit_counts_python(graph: Graph, partition: Partition, threshold: int) -> list[list[int]]:
    """The same counts from per-vertex neighbourhood walks."""
    out = []
    for v in range(graph.n):
        n2 = robust_second_neighborhood(graph, v, threshold)
        out.append([len(n2.intersection(part)) for part in partition.parts])
    return out


def _class_thresholds(partition: Partition, rule: str, d: Fraction) -> list[Fraction]:
    scale = Fraction(1, 2) + d if rule == "c5" else d
    return [scale * len(part) for part in partition.parts]


def class_partition(graph: Graph, partition: Partition, rule: str, d, cn_threshold: int,
                    method: str = "sparse") -> ClassAssignment:
    """Assign each vertex to the least part index whose hit threshold it meets, else ``X_0``.

    ``rule="c5"`` needs ``(1/2 + d)|V_i|`` hits, ``rule="long"`` needs ``d|V_i|``.
    """
    rule = _parse_rule(rule)
    partition.validate(graph.n)
    d = Fraction(d)
    if not 0 < d < 1:
        raise DomainError("d must lie in (0, 1)")
    if method == "sparse":
        counts = part_hit_counts(graph, partition, cn_threshold).tolist()
    elif method == "python":
        counts = part_hit_counts_python(graph, partition, cn_threshold)
    else:
        raise DomainError(f"unknown method {method!r}")
    need = _class_thresholds(partition, rule, d)
    classes: list[list[int]] = [[] for _ in partition.parts]
    x0 = []
    for v in range(graph.n):
        for i, c in enumerate(counts[v]):
            if c >= need[i]:
                classes[i].append(v)
                break
        else:
            x0.append(v)
    return ClassAssignment(classes, x0, rule)


@dataclass
class ClassCheck:
    independent: bool
    edge: tuple[int, int] | None
    x0_size: int

    def __bool__(self) -> bool:
        return self.independent


def verify_classes_independent(graph: Graph, assignment: ClassAssignment) -> ClassCheck:
    for cls in assignment.classes:
        cm = mask_of(cls)
        for v in cls:
            hit = graph.masks[v] & cm
            if hit:
                w = (hit & -hit).bit_length() - 1
                return ClassCheck(False, (min(v, w), max(v, w)), len(assignment.x0))
    return ClassCheck(True, None, len(assignment.x0))


def _cross_edges(graph: Graph, a: Sequence[int], b: Sequence[int]) -> int:
    bm = mask_of(b)
    return sum((graph.masks[v] & bm).bit_count() for v in a)


def density_reduced_graph(graph: Graph, partition: Partition, d, p, regularity: dict | None = None) -> Graph:
    """Graph on part indices ``0..k-1``; ``ij`` is an edge when the pair is dense enough.

    ``regularity`` (keys ``eps``, ``trials``, ``seed``) additionally requires
    the pair to survive :func:`sampled_regularity_check`.
    """
    partition.validate(graph.n)
    d, p = Fraction(d), Fraction(p)
    edges = []
    for i, j in combinations(range(partition.k), 2):
        a, b = partition.parts[i], partition.parts[j]
        if not a or not b or _cross_edges(graph, a, b) < d * p * len(a) * len(b):
            continue
        if regularity is not None and not sampled_regularity_check(
            graph, a, b, regularity["eps"], p, regularity.get("trials", 100), regularity.get("seed", 0)
        ):
            continue
        edges.append((i, j))
    return Graph(partition.k, edges)


def _pair_density(graph: Graph, x: Sequence[int], ym: int, ysize: int) -> Fraction:
    return Fraction(sum((graph.masks[v] & ym).bit_count() for v in x), len(x) * ysize)


def sampled_regularity_check(graph: Graph, a: Sequence[int], b: Sequence[int], eps, p, trials: int,
                             seed: int) -> bool:
    """One-sided refuter: False as soon as a sampled large sub-pair deviates by at least ``eps*p``.

    Two trials in three pick ``Y`` greedily against a random ``X`` to push
    the sub-pair density high or low; the rest draw both sides uniformly.
    """
    if trials < 1:
        raise DomainError("trials must be at least 1")
    eps, p = Fraction(eps), Fraction(p)
    a, b = sorted(a), sorted(b)
    if not a or not b:
        return True
    base = _pair_density(graph, a, mask_of(b), len(b))
    lo_a = max(1, math.ceil(eps * len(a)))
    lo_b = max(1, math.ceil(eps * len(b)))
    arr_a, arr_b = np.asarray(a), np.asarray(b)
    for trial in range(trials):
        rng = np.random.default_rng(seed ^ trial)
        xs = int(rng.integers(lo_a, len(a) + 1))
        ys = int(rng.integers(lo_b, len(b) + 1))
        x = [int(v) for v in rng.choice(arr_a, size=xs, replace=False)]
        if trial % 3 == 0:
            y = [int(v) for v in rng.choice(arr_b, size=ys, replace=False)]
        else:
            # greedy extremes: the ys vertices of B with the most (or fewest) neighbours in X
            xm = mask_of(x)
            jitter = rng.random(len(b))
            sign = -1 if trial % 3 == 1 else 1
            ranked = sorted(range(len(b)), key=lambda i: (sign * (graph.masks[b[i]] & xm).bit_count(), jitter[i]))
            y = [b[i] for i in ranked[:ys]]
        if abs(base - _pair_density(graph, x, mask_of(y), ys)) >= eps * p:
            return False
    return True


def regularity_exhaustive(graph: Graph, a: Sequence[int], b: Sequence[int], eps, p) -> bool:
    """The definition itself, over every admissible sub-pair (both sides at most 8 vertices)."""
    a, b = sorted(a), sorted(b)
    if len(a) > EXHAUSTIVE_REGULARITY_MAX or len(b) > EXHAUSTIVE_REGULARITY_MAX:
        raise SizeError("exhaustive regularity limited to 8 vertices per side")
    eps, p = Fraction(eps), Fraction(p)
    if not a or not b:
        return True
    base = _pair_density(graph, a, mask_of(b), len(b))
    ys_all = [(mask_of(y), len(y)) for r in range(len(b) + 1) if r >= eps * len(b) and r
              for y in combinations(b, r)]
    for r in range(1, len(a) + 1):
        if r < eps * len(a):
            continue
        for x in combinations(a, r):
            for ym, ysize in ys_all:
                if abs(base - _pair_density(graph, x, ym, ysize)) >= eps * p:
                    return False
    return True


@dataclass
class PipelineResult:
    assignment: ClassAssignment
    certified: bool
    diagnostics: dict

    def to_json(self) -> dict:
        return {"assignment": self.assignment.to_json(), "certified": self.certified, "diagnostics": self.diagnostics}


def bounded_coloring_pipeline(graph: Graph, mode: str, k: int, d, p, seed: int,
                              cn_threshold: int | None = None, partition: Partition | None = None) -> PipelineResult:
    """Classes from a seeded equipartition (or the given one); certified when they form a proper colouring.

    ``mode`` is ``"c5"`` or ``"long"`` (longer odd cycles).
    """
    rule = _parse_rule(mode)
    d = Fraction(d)
    if cn_threshold is None:
        cn_threshold = max(1, math.ceil(d * Fraction(p) ** 2 * graph.n))
    if partition is None:
        partition = random_equipartition(graph.n, k, seed)
    elif partition.k != k:
        raise DomainError("partition has the wrong number of parts")
    ca = class_partition(graph, partition, rule, d, cn_threshold)
    check = verify_classes_independent(graph, ca)
    certified = bool(check) and not ca.x0
    ca.verdict = f"chi <= {k} certified" if certified else "not certified"
    diagnostics = {"x0_size": len(ca.x0), "violating_edge": check.edge, "cn_threshold": cn_threshold,
                   "class_sizes": [len(c) for c in ca.classes]}
    return PipelineResult(ca, certified, diagnostics)


def b_set_expansion(graph: Graph, start, steps: int, fanout: int) -> list[set[int]]:
    """``B_1 = start``; ``B_t`` holds every vertex with at least ``fanout`` neighbours in ``B_{t-1}``."""
    if fanout < 1:
        raise DomainError("fanout must be at least 1")
    sets = [set(start)]
    for _ in range(steps - 1):
        prev = mask_of(sets[-1])
        sets.append({v for v in range(graph.n) if (graph.masks[v] & prev).bit_count() >= fanout})
    return sets

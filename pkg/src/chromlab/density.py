"""Exact 2-density, Turan density and densest 2-balanced subgraphs.

All arithmetic is over ``fractions.Fraction``; nothing here touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .flow import FlowNetwork
from .graph import DomainError, Graph, SizeError, iter_bits
from .solvers import chromatic_number

BRUTE_FORCE_MAX = 16


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def ratio(edges: int, vertices: int) -> Fraction:
    return Fraction(edges - 1, vertices - 2)


def _require_three(graph: Graph) -> None:
    if graph.n < 3:
        raise DomainError("2-density undefined for fewer than 3 vertices")


def _matching_value(graph: Graph) -> Fraction:
    # max degree <= 1: no connected 3-set exists, so the optimum mixes components
    if graph.m == 0:
        return Fraction(-1, graph.n - 2)
    return Fraction(0) if graph.m == 1 else Fraction(1, 2)


def two_density_bruteforce(graph: Graph) -> Fraction:
    """Maximum of ``(e(S)-1)/(|S|-2)`` over every vertex subset with ``|S| >= 3``."""
    _require_three(graph)
    n = graph.n
    if n > BRUTE_FORCE_MAX:
        raise SizeError(f"brute force limited to {BRUTE_FORCE_MAX} vertices")
    masks = graph.masks
    e = [0] * (1 << n)
    best_num, best_den = -1, 1
    for s in range(1, 1 << n):
        low = (s & -s).bit_length() - 1
        rest = s & (s - 1)
        e[s] = e[rest] + (masks[low] & rest).bit_count()
        size = s.bit_count()
        if size >= 3:
            num, den = e[s] - 1, size - 2
            if num * best_den > best_num * den:
                best_num, best_den = num, den
    return Fraction(best_num, best_den)


def _connected_subsets(graph: Graph, min_size: int) -> Iterable[int]:
    """Every connected vertex subset (as a bitmask) of size at least ``min_size``.

    Each subset is produced once, from its smallest vertex, by extension
    along an exclusive neighbourhood.
    """
    masks = graph.masks
    for v in range(graph.n):
        above = ~((1 << (v + 1)) - 1)
        stack = [(1 << v, masks[v] & above, 1 << v | masks[v])]
        while stack:
            sub, ext, closed = stack.pop()
            if sub.bit_count() >= min_size:
                yield sub
            while ext:
                low = ext & -ext
                w = low.bit_length() - 1
                ext ^= low
                new_ext = ext | (masks[w] & above & ~closed)
                stack.append((sub | low, new_ext, closed | masks[w]))


def two_density(graph: Graph) -> Fraction:
    """Exact ``m2``: subset search up to 16 vertices, parametric min cut beyond."""
    _require_three(graph)
    if max(graph.degrees()) <= 1:
        return _matching_value(graph)
    if graph.n <= BRUTE_FORCE_MAX:
        best = Fraction(1)  # any path on three vertices
        for sub in _connected_subsets(graph, 3):
            r = ratio(graph.edges_within(iter_bits(sub)), sub.bit_count())
            if r > best:
                best = r
        return best
    return _two_density_flow(graph)[0]


def _closure(graph: Graph, g: Fraction, forced: Iterable[int]) -> tuple[int, set[int]]:
    """Maximise ``b*e(S) - a*|S|`` over ``S`` containing ``forced`` where ``g = a/b``.

    Returns the optimum value and the minimal optimal ``S``.
    """
    a, b = g.numerator, g.denominator
    n, m = graph.n, graph.m
    src, sink = n + m, n + m + 1
    net = FlowNetwork(n + m + 2)
    inf = b * (m + 1) + a * (n + 1) + 1
    for i, (u, v) in enumerate(graph.edges):
        node = n + i
        net.add_edge(src, node, b)
        net.add_edge(node, u, inf)
        net.add_edge(node, v, inf)
    for v in range(n):
        net.add_edge(v, sink, a)
    for v in forced:
        net.add_edge(src, v, inf)
    cut = net.max_flow(src, sink)
    side = net.source_side(src)
    verts = {v for v in side if v < n}
    return b * m - cut, verts


def _two_density_flow(graph: Graph) -> tuple[Fraction, set[int]]:
    """Dinkelbach iteration over min-cut closures with each edge forced in.

    Forcing an edge ``uv`` makes any set beating ``|S| = 2`` strictly have at
    least three vertices, so spurious tiny sets never count.
    """
    g = Fraction(1)
    witness: set[int] = set()
    while True:
        improved = None
        for u, v in graph.edges:
            value, verts = _closure(graph, g, (u, v))
            if value > g.denominator - 2 * g.numerator:
                r = ratio(graph.edges_within(verts), len(verts))
                if improved is None or r > improved[0]:
                    improved = (r, verts)
        if improved is None or improved[0] <= g:
            if not witness:
                witness = set(_any_path3(graph))
            return g, witness
        g, witness = improved


def _any_path3(graph: Graph) -> tuple[int, int, int]:
    for v in range(graph.n):
        if len(graph.adj[v]) >= 2:
            a, b = sorted(graph.adj[v])[:2]
            return a, v, b
    raise DomainError("graph has no path on three vertices")


def two_density_flow(graph: Graph) -> Fraction:
    """The min-cut route regardless of size (exposed for cross-checking)."""
    _require_three(graph)
    if max(graph.degrees()) <= 1:
        return _matching_value(graph)
    return _two_density_flow(graph)[0]


def turan_density(graph: Graph) -> Fraction:
    if graph.m == 0:
        raise DomainError("Turan density needs at least one edge")
    chi = chromatic_number(graph)
    if not chi.exact:
        raise DomainError("chromatic number undecided within the search budget")
    return 1 - Fraction(1, chi.value - 1)


def is_two_balanced(graph: Graph) -> bool:
    _require_three(graph)
    return two_density(graph) == ratio(graph.m, graph.n)


def densest_balanced_subgraph(graph: Graph) -> tuple[Graph, list[int]]:
    """Smallest (then lexicographically least) vertex set attaining ``m2``.

    Returns the induced subgraph and its vertex list in the host. Every
    smallest optimal set is the minimal optimal closure for some forced path
    on three of its vertices, so scanning those closures is exhaustive.
    """
    _require_three(graph)
    n = graph.n
    if max(graph.degrees()) <= 1:
        if graph.m == 0:
            verts = list(range(n))
        elif graph.m == 1:
            u, v = graph.edges[0]
            third = next(w for w in range(n) if w not in (u, v))
            verts = sorted((u, v, third))
        else:
            (a, b), (c, d) = graph.edges[0], graph.edges[1]
            verts = sorted((a, b, c, d))
        return graph.induced_subgraph(verts), verts
    target = two_density(graph)
    a, b = target.numerator, target.denominator
    best: list[int] | None = None
    for v in range(n):
        nbrs = sorted(graph.adj[v])
        for i, u in enumerate(nbrs):
            for w in nbrs[i + 1:]:
                value, verts = _closure(graph, target, (u, v, w))
                if value != b - 2 * a:
                    continue
                cand = sorted(verts)
                if best is None or (len(cand), cand) < (len(best), best):
                    best = cand
    assert best is not None
    return graph.induced_subgraph(best), best

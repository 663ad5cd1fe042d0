"""Simple undirected graphs on vertices ``0..n-1`` and the edge-list text format."""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Invalid graph construction (bad ids, loops, parallel edges)."""


class ParseError(GraphError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DomainError(ValueError):
    """An operation was called outside its mathematical domain."""


class SizeError(ValueError):
    """Instance too large for an exact or exhaustive routine."""


INFINITY = math.inf


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable simple graph.

    Adjacency is kept both as frozensets and (lazily) as integer bitmasks,
    which Python supports at any width.
    """

    __slots__ = ("n", "edges", "adj", "_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        norm = []
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if v in adj[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(norm)
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in adj)
        self._masks: list[int] | None = None

    # basic queries

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def masks(self) -> list[int]:
        if self._masks is None:
            self._masks = [mask_of(a) for a in self.adj]
        return self._masks

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise DomainError(f"vertex {v} out of range for n={self.n}")

    # derived graphs

    def induced_subgraph(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabelled by the sorted order of ``vertices``."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        edges = [(index[u], index[w]) for u in vs for w in self.adj[u] if w in index and u < w]
        return Graph(len(vs), edges)

    def edges_within(self, vertices: Iterable[int]) -> int:
        mask = mask_of(vertices)
        masks = self.masks
        return sum((masks[v] & mask).bit_count() for v in iter_bits(mask)) // 2

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        drop = {(u, v) if u < v else (v, u) for u, v in edges}
        return Graph(self.n, (e for e in self.edges if e not in drop))

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        return Graph(self.n, list(self.edges) + list(edges))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [s], [s]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return all(not (self.adj[v] & vs) for v in vs)

    def is_proper_coloring(self, coloring: Sequence[int]) -> bool:
        if len(coloring) != self.n:
            return False
        return all(coloring[u] != coloring[v] for u, v in self.edges)

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components())

    # serialization

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` header plus ``m`` lines of ``u v`` edge-list format."""
    lines = [ln.strip() for ln in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    if not lines:
        raise ParseError(1, "missing header 'n m'")

    def ints(lineno: int, line: str) -> tuple[int, int]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected two integers, got {line!r}")
        try:
            return int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(lineno, f"expected two integers, got {line!r}") from None

    n, m = ints(1, lines[0])
    if n < 0 or m < 0:
        raise ParseError(1, "negative counts in header")
    body = lines[1:]
    if len(body) < m:
        raise ParseError(len(lines) + 1, f"expected {m} edge lines, found {len(body)}")
    if len(body) > m:
        raise ParseError(m + 2, f"unexpected line beyond the {m} declared edges")
    seen: set[tuple[int, int]] = set()
    edges = []
    for i, line in enumerate(body, start=2):
        u, v = ints(i, line)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(i, f"vertex id out of range 0..{n - 1}")
        if u == v:
            raise ParseError(i, f"self-loop at {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ParseError(i, f"duplicate edge {u} {v}")
        seen.add(key)
        edges.append(key)
    return Graph(n, edges)


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(graph: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(graph.to_text())


# named graphs

def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise DomainError("a cycle needs at least 3 vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    parts, start = [], 0
    for s in sizes:
        parts.append(range(start, start + s))
        start += s
    edges = [(u, v) for i, pi in enumerate(parts) for pj in parts[i + 1:] for u in pi for v in pj]
    return Graph(start, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, edges)


def min_degree(graph: Graph) -> int:
    if graph.n == 0:
        raise DomainError("minimum degree of the empty graph is undefined")
    return min(len(a) for a in graph.adj)


def girth(graph: Graph) -> float | int:
    """Length of a shortest cycle, ``math.inf`` for forests.

    BFS from every root; a non-tree edge ``(u, w)`` met from root ``r``
    closes a closed walk of length ``d(u) + d(w) + 1`` that contains a cycle
    at most that long, and the minimum over roots is attained exactly.
    """
    best = INFINITY
    n, adj = graph.n, graph.adj
    for r in range(n):
        dist = {r: 0}
        parent = {r: -1}
        frontier = [r]
        while frontier:
            d = dist[frontier[0]]
            if 2 * d + 1 >= best:
                break
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if w not in dist:
                        dist[w] = d + 1
                        parent[w] = u
                        nxt.append(w)
                    elif w != parent[u]:
                        length = d + dist[w] + 1
                        if length < best:
                            best = length
            frontier = nxt
    return best

"""Non-induced subgraph copies, cycle enumeration and fixed-length path search."""

from __future__ import annotations

from typing import Iterator, Sequence

from .graph import Graph, SizeError, iter_bits

DEFAULT_COPY_LIMIT = 10**6
DEFAULT_CYCLE_BUDGET = 10**6

Copy = tuple[tuple[int, int], ...]


def is_cycle_graph(graph: Graph) -> bool:
    return (
        graph.n >= 3
        and graph.m == graph.n
        and all(len(a) == 2 for a in graph.adj)
        and len(graph.components()) == 1
    )


def _embedding_order(pattern: Graph) -> list[int]:
    order: list[int] = []
    placed: set[int] = set()
    remaining = set(range(pattern.n))
    while remaining:
        v = max(
            remaining,
            key=lambda a: (len(pattern.adj[a] & placed), len(pattern.adj[a]), -a),
        )
        order.append(v)
        placed.add(v)
        remaining.discard(v)
    return order


def iter_embeddings(host: Graph, pattern: Graph, fixed: tuple[int, int] | None = None) -> Iterator[tuple[int, ...]]:
    """Injective edge-preserving maps ``V(pattern) -> V(host)``.

    ``fixed=(a, v)`` restricts to maps sending pattern vertex ``a`` to ``v``.
    Yields tuples ``phi`` with ``phi[a]`` the image of ``a``.
    """
    k = pattern.n
    if k == 0:
        yield ()
        return
    if k > host.n:
        return
    order = _embedding_order(pattern)
    if fixed is not None:
        a0 = fixed[0]
        order.remove(a0)
        order.insert(0, a0)
    pos = {a: i for i, a in enumerate(order)}
    back = [[b for b in pattern.adj[a] if pos[b] < pos[a]] for a in order]
    need = [len(pattern.adj[a]) for a in order]
    masks = host.masks
    hdeg = host.degrees()
    deg_mask: dict[int, int] = {}
    for d in set(need):
        m = 0
        for v in range(host.n):
            if hdeg[v] >= d:
                m |= 1 << v
        deg_mask[d] = m
    phi = [-1] * k

    def rec(i: int, used: int) -> Iterator[tuple[int, ...]]:
        if i == k:
            yield tuple(phi)
            return
        a = order[i]
        if i == 0 and fixed is not None:
            cand = (1 << fixed[1]) & deg_mask[need[0]]
        elif back[i]:
            cand = deg_mask[need[i]]
            for b in back[i]:
                cand &= masks[phi[b]]
        else:
            cand = deg_mask[need[i]]
        cand &= ~used
        for v in iter_bits(cand):
            phi[a] = v
            yield from rec(i + 1, used | (1 << v))
        phi[a] = -1

    yield from rec(0, 0)


def _copy_key(pattern: Graph, phi: Sequence[int]) -> tuple[frozenset[int], Copy]:
    edges = tuple(sorted((phi[u], phi[v]) if phi[u] < phi[v] else (phi[v], phi[u]) for u, v in pattern.edges))
    return frozenset(phi), edges


def contains_copy(host: Graph, pattern: Graph) -> tuple[bool, tuple[int, ...] | None]:
    """Whether ``host`` has a (not necessarily induced) copy of ``pattern``.

    Returns ``(found, witness)`` where the witness maps pattern vertices to
    host vertices. Cycles use a dedicated path-joining search.
    """
    if is_cycle_graph(pattern):
        cyc = find_cycle_of_length(host, pattern.n)
        if cyc is None:
            return False, None
        # pattern cycle order: walk the pattern from vertex 0
        walk = [0]
        prev = -1
        while len(walk) < pattern.n:
            nxt = min(w for w in pattern.adj[walk[-1]] if w != prev)
            prev = walk[-1]
            walk.append(nxt)
        phi = [0] * pattern.n
        for a, v in zip(walk, cyc):
            phi[a] = v
        return True, tuple(phi)
    for phi in iter_embeddings(host, pattern):
        return True, phi
    return False, None


def enumerate_copies(host: Graph, pattern: Graph, limit: int = DEFAULT_COPY_LIMIT) -> list[Copy]:
    """All unlabelled copies of ``pattern`` in ``host`` as sorted edge tuples.

    Embeddings differing by an automorphism of the pattern give one copy. The
    list is in lexicographic order of the sorted edge tuples.
    """
    seen: set[tuple[frozenset[int], Copy]] = set()
    for phi in iter_embeddings(host, pattern):
        seen.add(_copy_key(pattern, phi))
        if len(seen) > limit:
            raise SizeError(f"more than {limit} copies; use a smaller instance")
    return sorted(edges for _, edges in seen)


def count_copies_at_vertex(host: Graph, pattern: Graph, v: int) -> int:
    """Number of unlabelled copies of ``pattern`` whose vertex set contains ``v``."""
    host.check_vertex(v)
    seen = set()
    for a in range(pattern.n):
        for phi in iter_embeddings(host, pattern, fixed=(a, v)):
            seen.add(_copy_key(pattern, phi))
    return len(seen)


def iter_cycles(graph: Graph, max_len: int, min_len: int = 3, budget: int = DEFAULT_CYCLE_BUDGET) -> Iterator[tuple[int, ...]]:
    """Simple cycles with ``min_len <= length <= max_len``, each exactly once.

    A cycle is reported starting at its smallest vertex, oriented so the
    second vertex is smaller than the last. Order: by start vertex, then DFS
    order over increasing neighbour ids.
    """
    adj = [sorted(a) for a in graph.adj]
    count = 0
    for s in range(graph.n):
        path = [s]
        on_path = {s}
        closing = graph.adj[s]
        stack = [iter(w for w in adj[s] if w > s)]
        while stack:
            w = next(stack[-1], None)
            if w is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if w in on_path:
                continue
            path.append(w)
            on_path.add(w)
            length = len(path)
            if length >= min_len and w in closing and path[1] < w:
                count += 1
                if count > budget:
                    raise SizeError(f"more than {budget} cycles")
                yield tuple(path)
            if length < max_len:
                stack.append(iter(x for x in adj[w] if x > s))
            else:
                on_path.discard(path.pop())


def _half_paths(adj: Sequence[frozenset[int] | set[int]], start: int, length: int, avoid: int) -> dict[int, list[frozenset[int]]]:
    """Simple paths of ``length`` edges from ``start`` avoiding ``avoid``.

    Grouped by end vertex; each entry is the set of vertices strictly between
    ``start`` and the end.
    """
    out: dict[int, list[frozenset[int]]] = {}
    path = [start]

    def rec(u: int) -> None:
        if len(path) == length + 1:
            out.setdefault(u, []).append(frozenset(path[1:-1]))
            return
        for w in adj[u]:
            if w != avoid and w not in path:
                path.append(w)
                rec(w)
                path.pop()

    rec(start)
    return out


def find_path_of_length(adj: Sequence[frozenset[int] | set[int]], x: int, y: int, length: int) -> list[int] | None:
    """A simple path with exactly ``length`` edges from ``x`` to ``y``, or None.

    Meet in the middle: half-paths from both ends joined at a common vertex
    with disjoint interiors.
    """
    if x == y or length < 1:
        return None
    if length == 1:
        return [x, y] if y in adj[x] else None
    h1 = (length + 1) // 2
    h2 = length - h1
    left = _half_paths(adj, x, h1, y)
    if not left:
        return None
    right = _half_paths(adj, y, h2, x)
    for mid, lsets in left.items():
        rsets = right.get(mid)
        if not rsets:
            continue
        for ls in lsets:
            for rs in rsets:
                if ls.isdisjoint(rs):
                    return _rebuild(adj, x, y, mid, ls, rs, h1, h2)
    return None


def _rebuild(adj, x, y, mid, ls, rs, h1, h2) -> list[int]:
    def walk(start, interior, hops):
        path = [start]

        def rec(u):
            if len(path) == hops + 1:
                return u == mid
            for w in adj[u]:
                if w == mid and len(path) == hops:
                    path.append(w)
                    return True
                if w in interior and w not in path:
                    path.append(w)
                    if rec(w):
                        return True
                    path.pop()
            return False

        rec(start)
        return path

    a = walk(x, ls, h1)
    b = walk(y, rs, h2)
    return a + b[::-1][1:]


def has_path_of_length(adj, x: int, y: int, length: int) -> bool:
    return find_path_of_length(adj, x, y, length) is not None


def find_cycle_of_length(graph: Graph, length: int) -> list[int] | None:
    """A cycle with exactly ``length`` vertices, or None."""
    if length < 3:
        return None
    adj = graph.adj
    for u, v in graph.edges:
        path = find_path_of_length(adj, v, u, length - 1)
        if path is not None:
            return path
    return None

"""Exact chromatic number and independence number with explicit search budgets."""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .graph import DomainError, Graph, iter_bits

DEFAULT_BUDGET = 10**8

# the exact searches recurse once or twice per vertex
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ChromaticResult:
    lower: int
    upper: int
    coloring: tuple[int, ...]
    nodes: int

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int | None:
        return self.upper if self.exact else None


@dataclass(frozen=True)
class IndependentSetResult:
    vertices: tuple[int, ...]
    upper: int
    nodes: int

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def exact(self) -> bool:
        return self.size == self.upper


def dsatur_coloring(graph: Graph) -> list[int]:
    """Greedy DSATUR colouring; an upper bound for the chromatic number."""
    n = graph.n
    color = [-1] * n
    sat = [0] * n  # bitmask of neighbour colours
    deg = graph.degrees()
    for _ in range(n):
        v = max((u for u in range(n) if color[u] < 0), key=lambda u: (sat[u].bit_count(), deg[u], -u))
        c = 0
        while sat[v] >> c & 1:
            c += 1
        color[v] = c
        for w in graph.adj[v]:
            sat[w] |= 1 << c
    return color


def max_clique(graph: Graph, node_budget: int = DEFAULT_BUDGET) -> list[int]:
    """Largest clique found by bitset branch and bound (colour-class bound).

    If the budget runs out the best clique so far is returned, which is still a
    valid lower bound for the chromatic number.
    """
    masks = graph.masks
    best: list[int] = []
    nodes = 0

    def colour_bound(cand: int) -> list[tuple[int, int]]:
        # greedy colour classes; returns vertices with their colour number
        out = []
        k = 0
        rest = cand
        while rest:
            k += 1
            q = rest
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~low & ~masks[v]
                rest &= ~low
                out.append((v, k))
        return out

    def expand(clique: list[int], cand: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded
        order = colour_bound(cand)
        for v, k in reversed(order):
            if len(clique) + k <= len(best):
                return
            clique.append(v)
            new = cand & masks[v]
            if new:
                expand(clique, new)
            elif len(clique) > len(best):
                best = list(clique)
            clique.pop()
            cand &= ~(1 << v)

    try:
        expand([], (1 << graph.n) - 1)
    except BudgetExceeded:
        pass
    return sorted(best)


def _components_of(masks: list[int], region: int) -> list[int]:
    comps = []
    while region:
        low = region & -region
        comp = frontier = low
        while frontier:
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= masks[u]
            frontier = nxt & region & ~comp
            comp |= frontier
        comps.append(comp)
        region &= ~comp
    return comps


def _k_coloring(graph: Graph, k: int, budget: int) -> tuple[bool | None, list[int] | None, int]:
    """Decide k-colourability by backtracking with forward checking.

    Forced vertices (one colour left) are taken first; otherwise the branch
    vertex maximises uncoloured degree per remaining colour. Independent
    components of the uncoloured part are solved separately, and new colours
    are introduced in order to break colour symmetry.

    Returns ``(answer, colouring, nodes)``; ``answer`` is None when the node
    budget was exhausted.
    """
    n = graph.n
    if n == 0:
        return True, [], 0
    if k <= 0:
        return False, None, 0
    masks = graph.masks
    full = (1 << k) - 1
    dom = [full] * n
    color = [-1] * n
    nodes = 0

    def solve(region: int, used: int) -> bool:
        if not region:
            return True
        comps = _components_of(masks, region)
        if len(comps) == 1:
            return branch(region, used)
        comps.sort(key=int.bit_count)
        saved_dom, saved_color = dom[:], color[:]
        for comp in comps:
            if not branch(comp, used):
                dom[:], color[:] = saved_dom, saved_color
                return False
        return True

    def branch(region: int, used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded
        v, vd, vs = -1, -1, 1
        for u in iter_bits(region):
            size = dom[u].bit_count()
            if size == 1:
                v = u
                break
            d = (masks[u] & region).bit_count()
            if d * vs > vd * size or (d * vs == vd * size and size < vs):
                v, vd, vs = u, d, size
        options = dom[v]
        if used < k:
            options &= (1 << (used + 1)) - 1
        rest = region & ~(1 << v)
        nbrs = masks[v] & rest
        for c in iter_bits(options):
            bit = 1 << c
            changed = []
            ok = True
            for w in iter_bits(nbrs):
                if dom[w] & bit:
                    dom[w] ^= bit
                    changed.append(w)
                    if not dom[w]:
                        ok = False
                        break
            if ok:
                color[v] = c
                if solve(rest, max(used, c + 1)):
                    return True
                color[v] = -1
            for w in changed:
                dom[w] |= bit
        return False

    try:
        found = solve((1 << n) - 1, 0)
    except BudgetExceeded:
        return None, None, nodes
    return found, (list(color) if found else None), nodes


def is_k_colorable(graph: Graph, k: int, node_budget: int = DEFAULT_BUDGET) -> bool | None:
    if k == 2:
        return is_bipartite(graph)
    return _k_coloring(graph, k, node_budget)[0]


def k_coloring(graph: Graph, k: int, node_budget: int = DEFAULT_BUDGET) -> list[int] | None:
    """A proper k-colouring or None; raises BudgetExceeded if undecided."""
    ans, col, _ = _k_coloring(graph, k, node_budget)
    if ans is None:
        raise BudgetExceeded(f"{k}-colourability undecided within {node_budget} nodes")
    return col


def is_bipartite(graph: Graph) -> bool:
    return odd_cycle(graph) is None


def odd_cycle(graph: Graph) -> list[int] | None:
    """An odd cycle as a vertex list, or None if the graph is bipartite."""
    side = [-1] * graph.n
    parent = [-1] * graph.n
    for s in range(graph.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = [s]
        for u in queue:
            for w in graph.adj[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    parent[w] = u
                    queue.append(w)
                elif side[w] == side[u]:
                    # walk both ends up to their lowest common ancestor
                    a, b = [u], [w]
                    while a[-1] != -1:
                        a.append(parent[a[-1]])
                    while b[-1] != -1:
                        b.append(parent[b[-1]])
                    sa = set(a)
                    lca = next(x for x in b if x in sa)
                    path_a = a[: a.index(lca) + 1]
                    path_b = b[: b.index(lca)]
                    return path_a + path_b[::-1]
    return None


def chromatic_number(graph: Graph, node_budget: int = DEFAULT_BUDGET) -> ChromaticResult:
    """Exact chromatic number with a witness colouring.

    Clique lower bound, DSATUR upper bound, then increasing-k decision search.
    On budget exhaustion the result is inconclusive (``lower < upper``).
    """
    n = graph.n
    if n == 0:
        raise DomainError("chromatic number of the empty graph is undefined")
    greedy = dsatur_coloring(graph)
    upper = max(greedy) + 1
    coloring = tuple(greedy)
    if graph.m == 0:
        return ChromaticResult(1, 1, coloring, 0)
    lower = max(2, len(max_clique(graph, node_budget)))
    nodes = 0
    k = lower
    while k < upper:
        if k == 2:
            ans = is_bipartite(graph)
            col = _two_coloring(graph) if ans else None
        else:
            ans, col, used = _k_coloring(graph, k, node_budget - nodes)
            nodes += used
        if ans is None:
            return ChromaticResult(k, upper, coloring, nodes)
        if ans:
            return ChromaticResult(k, k, tuple(col), nodes)
        k += 1
    return ChromaticResult(upper, upper, coloring, nodes)


def _two_coloring(graph: Graph) -> list[int]:
    side = [-1] * graph.n
    for s in range(graph.n):
        if side[s] < 0:
            side[s] = 0
            stack = [s]
            while stack:
                u = stack.pop()
                for w in graph.adj[u]:
                    if side[w] < 0:
                        side[w] = 1 - side[u]
                        stack.append(w)
    return side


def count_colorings(graph: Graph, r: int, equal_pair: tuple[int, int] | None = None) -> int:
    """Number of proper colourings with colours ``0..r-1`` (labelled colours).

    Plain vertex-order backtracking, independent of the DSATUR search. With
    ``equal_pair=(x, y)`` only colourings with ``c(x) == c(y)`` are counted.
    """
    n = graph.n
    adj = graph.adj
    color = [-1] * n
    order = list(range(n))
    if equal_pair is not None:
        x, y = equal_pair
        order.remove(y)
        order.insert(order.index(x) + 1, y)

    def rec(i: int) -> int:
        if i == n:
            return 1
        v = order[i]
        total = 0
        choices = range(r)
        if equal_pair is not None and v == equal_pair[1]:
            choices = (color[equal_pair[0]],)
        for c in choices:
            if all(color[w] != c for w in adj[v]):
                color[v] = c
                total += rec(i + 1)
                color[v] = -1
        return total

    return rec(0)


def _clique_cover_bound(masks: list[int], cand: int) -> int:
    """Number of cliques in a greedy clique cover of ``cand``; bounds alpha from above."""
    count = 0
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        clique = low
        common = masks[v] & cand
        while common:
            lw = common & -common
            w = lw.bit_length() - 1
            clique |= lw
            common &= masks[w]
        cand &= ~clique
        count += 1
    return count


def max_independent_set(graph: Graph, node_budget: int = DEFAULT_BUDGET) -> IndependentSetResult:
    """Maximum independent set by branch and bound.

    Vertices of degree at most one in the candidate set are taken greedily
    (always safe); otherwise branch on a maximum-degree vertex, pruning with a
    greedy clique-cover bound.
    """
    n = graph.n
    masks = graph.masks
    best = 0
    best_set = 0
    nodes = 0

    def rec(cand: int, chosen: int, size: int) -> None:
        nonlocal best, best_set, nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded
        while True:
            if not cand:
                if size > best:
                    best, best_set = size, chosen
                return
            if size + cand.bit_count() <= best:
                return
            pick = -1
            top, top_deg = -1, -1
            for v in iter_bits(cand):
                d = (masks[v] & cand).bit_count()
                if d <= 1:
                    pick = v
                    break
                if d > top_deg:
                    top, top_deg = v, d
            if pick < 0:
                break
            chosen |= 1 << pick
            size += 1
            cand &= ~(masks[pick] | (1 << pick))
        if size + _clique_cover_bound(masks, cand) <= best:
            return
        rec(cand & ~(masks[top] | (1 << top)), chosen | (1 << top), size + 1)
        rec(cand & ~(1 << top), chosen, size)

    full = (1 << n) - 1
    try:
        rec(full, 0, 0)
        upper = best
    except BudgetExceeded:
        upper = _clique_cover_bound(masks, full)
    return IndependentSetResult(tuple(iter_bits(best_set)), max(upper, best), nodes)

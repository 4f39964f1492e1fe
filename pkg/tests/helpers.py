"""Independent reference implementations and input generators for tests.

Nothing here reuses the package's algorithms: the references are plain
enumerations so they can serve as oracles.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from bipweight.graph import Graph
from bipweight.parity import ParitySpec


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def has_proper_two_colouring(g: Graph) -> bool:
    """Exhaustive over all 2^n colourings."""
    for bits in range(1 << g.n):
        if all(((bits >> u) & 1) != ((bits >> v) & 1) for u, v in g.edges):
            return True
    return g.n == 0


def connected_after_removing(g: Graph, removed: set[tuple[int, int]]) -> bool:
    if g.n == 0:
        return True
    adj = {v: set() for v in range(g.n)}
    for u, v in g.edges:
        if (u, v) not in removed:
            adj[u].add(v)
            adj[v].add(u)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for x in adj[v] - seen:
            seen.add(x)
            stack.append(x)
    return len(seen) == g.n


def min_cut_brute(g: Graph) -> int:
    """Smallest e(X, V-X) over non-empty proper vertex subsets X containing 0."""
    best = g.m
    for bits in range(1 << (g.n - 1)):
        X = {0} | {i + 1 for i in range(g.n - 1) if bits >> i & 1}
        if len(X) == g.n:
            continue
        best = min(best, sum(1 for u, v in g.edges if (u in X) != (v in X)))
    return best


def max_matching_brute(g: Graph) -> int:
    adj = [set(a) for a in g.adj]

    @lru_cache(maxsize=None)
    def best(free: int) -> int:
        if not free:
            return 0
        v = (free & -free).bit_length() - 1
        rest = free & ~(1 << v)
        out = best(rest)
        for x in adj[v]:
            if rest >> x & 1:
                out = max(out, 1 + best(rest & ~(1 << x)))
        return out

    return best((1 << g.n) - 1)


def is_matching(g: Graph, edges) -> bool:
    used = set()
    for u, v in edges:
        if not g.has_edge(u, v) or u in used or v in used:
            return False
        used.update((u, v))
    return True


def factor_exists_brute(g: Graph, spec: ParitySpec) -> bool:
    for r in range(g.m + 1):
        for sub in itertools.combinations(g.edges, r):
            deg = [0] * g.n
            for u, v in sub:
                deg[u] += 1
                deg[v] += 1
            if not spec.violations(deg):
                return True
    return False


def random_spec(g: Graph, rng: random.Random) -> ParitySpec:
    """Mix of free-form windows and windows planted around a random subgraph's
    degrees with occasional parity flips; roughly a third come out feasible."""
    lo: list[int] = []
    hi: list[int] = []
    if rng.random() < 0.5:
        for v in range(g.n):
            f = rng.randint(0, g.degree(v) + 1)
            lo.append(f - 2 * rng.randint(0, f // 2 + 1))
            hi.append(f)
        return ParitySpec.from_lists(lo, hi)
    deg = [0] * g.n
    for u, v in g.edges:
        if rng.random() < 0.5:
            deg[u] += 1
            deg[v] += 1
    for v in range(g.n):
        base = deg[v]
        if rng.random() < 0.1:
            base += 1 if base == 0 or rng.random() < 0.5 else -1
        hi.append(base + 2 * rng.randint(0, 1))
        lo.append(base - 2 * rng.randint(0, 2))
    return ParitySpec.from_lists(lo, hi)


def random_connected_bipartite(rng: random.Random, n_min: int = 2, n_max: int = 12) -> Graph:
    """Random spanning tree across a random split, plus random extra cross edges."""
    n = rng.randint(n_min, n_max)
    a = rng.randint(1, n - 1)
    side = [0] * a + [1] * (n - a)
    rng.shuffle(side)
    first0, first1 = side.index(0), side.index(1)
    edges = {(min(first0, first1), max(first0, first1))}
    placed = [first0, first1]
    rest = [v for v in range(n) if v not in placed]
    rng.shuffle(rest)
    for v in rest:
        x = rng.choice([y for y in placed if side[y] != side[v]])
        edges.add((min(x, v), max(x, v)))
        placed.append(v)
    p = rng.random()
    for u in range(n):
        for v in range(u + 1, n):
            if side[u] != side[v] and rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, edges)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])

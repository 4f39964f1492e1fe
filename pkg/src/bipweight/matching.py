"""Maximum cardinality matching in general graphs (Edmonds' blossom shrinking)."""

from __future__ import annotations

from collections import deque

from .graph import Factor, Graph, norm_edge


def max_matching(h: Graph) -> Factor:
    """Return a maximum matching of ``h`` as a :class:`Factor`.

    A greedy pass seeds the matching, then each exposed vertex (in id order)
    grows an alternating BFS tree; odd cycles are shrunk by relabelling their
    vertices with a common base. Deterministic for a given graph.
    """
    n = h.n
    adj = h.adj
    match = [-1] * n
    for v in range(n):
        if match[v] == -1:
            for x in adj[v]:
                if match[x] == -1:
                    match[v] = x
                    match[x] = v
                    break

    for root in range(n):
        if match[root] == -1:
            end, parent = _find_augmenting_path(adj, match, root)
            v = end
            while v != -1:
                pv = parent[v]
                nxt = match[pv]
                match[v] = pv
                match[pv] = v
                v = nxt

    edges = frozenset(norm_edge(v, match[v]) for v in range(n) if match[v] > v)
    return Factor(h, edges)


def _find_augmenting_path(adj, match: list[int], root: int) -> tuple[int, list[int]]:
    n = len(adj)
    used = [False] * n
    parent = [-1] * n
    base = list(range(n))
    used[root] = True
    q = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    while q:
        v = q.popleft()
        for to in adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and parent[match[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            q.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if match[to] == -1:
                    return to, parent
                used[match[to]] = True
                q.append(match[to])
    return -1, parent

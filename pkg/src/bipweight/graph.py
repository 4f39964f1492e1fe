"""Simple undirected graphs on dense integer ids, plus the generators and
structural predicates used by the weighting constructions."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import GenerationError, GraphParseError

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph with vertices ``0..n-1``.

    ``edges`` is sorted and every edge is stored as ``(u, v)`` with ``u < v``.
    ``adj`` holds sorted neighbour tuples, so iteration order is deterministic.
    """

    n: int
    edges: tuple[Edge, ...]
    adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    _index: dict[Edge, int] = field(repr=False, compare=False, hash=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        seen: set[Edge] = set()
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            key = norm_edge(u, v)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            nbrs[u].append(v)
            nbrs[v].append(u)
        ordered = tuple(sorted(seen))
        return cls(
            n=n,
            edges=ordered,
            adj=tuple(tuple(sorted(a)) for a in nbrs),
            _index={e: i for i, e in enumerate(ordered)},
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def neighbors_of_degree(self, v: int, r: int) -> list[int]:
        """Neighbours of ``v`` whose degree is exactly ``r``."""
        return [x for x in self.adj[v] if len(self.adj[x]) == r]

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self._index

    def edge_index(self, u: int, v: int) -> int:
        return self._index[norm_edge(u, v)]

    def incident_edges(self, v: int) -> list[int]:
        return [self._index[norm_edge(v, x)] for x in self.adj[v]]

    def is_regular(self) -> bool:
        return self.n > 0 and self.min_degree() == self.max_degree()

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"unknown vertex id {v} (graph has {self.n} vertices)")

    def to_edge_list(self, header: bool = True, comments: Sequence[str] = ()) -> str:
        lines = [f"# {c}" for c in comments]
        if header:
            lines.append(f"n {self.n}")
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Bipartition:
    side_u: frozenset[int]
    side_w: frozenset[int]

    def side_of(self, v: int) -> str:
        return "U" if v in self.side_u else "W"

    def side(self, name: str) -> frozenset[int]:
        if name not in ("U", "W"):
            raise ValueError(f"side must be 'U' or 'W', got {name!r}")
        return self.side_u if name == "U" else self.side_w

    def swapped(self) -> Bipartition:
        return Bipartition(self.side_w, self.side_u)

    def oriented(self, u: int) -> Bipartition:
        """Same split, with ``u`` placed on side U."""
        return self if u in self.side_u else self.swapped()


@dataclass(frozen=True)
class Factor:
    """Spanning subgraph of ``parent`` given by an edge subset."""

    parent: Graph
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if not self.parent.has_edge(u, v) or u > v:
                raise ValueError(f"({u}, {v}) is not a normalised edge of the parent graph")

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> list[int]:
        deg = [0] * self.parent.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def __len__(self) -> int:
        return len(self.edges)


# ---------------------------------------------------------------- parsing


def parse_graph(text: str, source: str | None = None) -> Graph:
    """Parse the edge-list format: optional ``n <count>`` header, ``u v`` lines,
    ``#`` comments and blank lines ignored."""
    n_header: int | None = None
    edges: list[Edge] = []
    seen: dict[Edge, int] = {}
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "n":
            if n_header is not None:
                raise GraphParseError("repeated 'n' header", lineno, source)
            if edges:
                raise GraphParseError("'n' header must precede edges", lineno, source)
            if len(parts) != 2 or not parts[1].isdigit():
                raise GraphParseError(f"malformed header {line!r}", lineno, source)
            n_header = int(parts[1])
            continue
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphParseError(f"malformed edge line {line!r}", lineno, source)
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", lineno, source)
        key = norm_edge(u, v)
        if key in seen:
            raise GraphParseError(f"duplicate edge {u} {v} (first on line {seen[key]})", lineno, source)
        seen[key] = lineno
        edges.append(key)
        max_id = max(max_id, u, v)
    n = max_id + 1 if n_header is None else n_header
    if max_id >= n:
        raise GraphParseError(f"vertex id {max_id} exceeds header count n={n}", None, source)
    return Graph.from_edges(n, edges)


# ------------------------------------------------------------- predicates


def bipartition(g: Graph) -> Bipartition | None:
    """2-colour ``g`` by BFS layering, component by component.

    Every component's least vertex goes to side U, so vertex 0 is always in U.
    Returns ``None`` if some component contains an odd cycle.
    """
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        q = deque([s])
        while q:
            v = q.popleft()
            for x in g.adj[v]:
                if color[x] == -1:
                    color[x] = 1 - color[v]
                    q.append(x)
                elif color[x] == color[v]:
                    return None
    u = frozenset(v for v in range(g.n) if color[v] == 0)
    w = frozenset(v for v in range(g.n) if color[v] == 1)
    return Bipartition(u, w)


def _reach(g: Graph, start: int, removed: int = -1) -> int:
    seen = [False] * g.n
    seen[start] = True
    if removed >= 0:
        seen[removed] = True
    count = 1
    stack = [start]
    while stack:
        v = stack.pop()
        for x in g.adj[v]:
            if not seen[x]:
                seen[x] = True
                count += 1
                stack.append(x)
    return count


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return _reach(g, 0) == g.n


def connected_without(g: Graph, v: int) -> bool:
    """Whether ``g - v`` is connected (the empty graph counts as connected)."""
    g.check_vertex(v)
    if g.n <= 2:
        return True
    start = 0 if v != 0 else 1
    return _reach(g, start, removed=v) == g.n - 1


def is_two_connected(g: Graph) -> bool:
    return g.n >= 3 and is_connected(g) and all(connected_without(g, v) for v in range(g.n))


def _unit_max_flow(g: Graph, s: int, t: int, cap_limit: int) -> int:
    # Residual capacity per arc; an undirected unit edge is two unit arcs.
    flow: dict[tuple[int, int], int] = {}
    total = 0
    while total < cap_limit:
        parent = [-1] * g.n
        parent[s] = s
        q = deque([s])
        while q and parent[t] == -1:
            v = q.popleft()
            for x in g.adj[v]:
                if parent[x] == -1 and flow.get((v, x), 0) < 1:
                    parent[x] = v
                    q.append(x)
        if parent[t] == -1:
            break
        x = t
        while x != s:
            p = parent[x]
            flow[(p, x)] = flow.get((p, x), 0) + 1
            flow[(x, p)] = flow.get((x, p), 0) - 1
            x = p
        total += 1
    return total


def edge_connectivity(g: Graph) -> int:
    """Minimum number of edges whose removal disconnects ``g``.

    Any minimum cut separates vertex 0 from some other vertex, so the minimum
    over ``t`` of the unit-capacity max-flow from 0 to ``t`` is the answer.
    """
    if g.n < 2:
        raise ValueError("edge connectivity needs at least 2 vertices")
    best = g.min_degree()
    for t in range(1, g.n):
        best = min(best, _unit_max_flow(g, 0, t, best))
        if best == 0:
            break
    return best


# ------------------------------------------------------------- generators


def gen_theta(lengths: Sequence[int]) -> Graph:
    """Generalized theta graph: hubs 0 and 1 joined by internally disjoint
    paths with the given edge counts."""
    lengths = list(lengths)
    if len(lengths) < 3:
        raise ValueError("a generalized theta graph needs at least 3 paths")
    if any(l < 1 for l in lengths):
        raise ValueError("path lengths must be >= 1")
    if lengths.count(1) > 1:
        raise ValueError("at most one path of length 1 (graph must be simple)")
    edges: list[Edge] = []
    nxt = 2
    for length in lengths:
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph.from_edges(nxt, edges)


def gen_gamma_pair() -> Graph:
    """Two copies of C6 with a pendant vertex, the two pendants joined."""
    edges: list[Edge] = []
    for base in (0, 7):
        edges.extend((base + i, base + (i + 1) % 6) for i in range(6))
        edges.append((base, base + 6))
    edges.append((6, 13))
    return Graph.from_edges(14, edges)


def gen_complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("complete bipartite sides must be >= 1")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


REGULAR_MATCHING_TRIES = 2000
REGULAR_RESTARTS = 200


def gen_regular_bipartite(r: int, n: int, seed: int) -> Graph:
    """Random ``r``-regular bipartite graph on sides ``0..n-1`` and ``n..2n-1``.

    Built as a union of ``r`` random perfect matchings. A matching that hits an
    existing edge is redrawn (up to ``REGULAR_MATCHING_TRIES`` times) from the
    same advancing RNG; a stuck build restarts, at most ``REGULAR_RESTARTS``
    times. The result need not be connected.
    """
    if n < 1 or r < 0 or r > n:
        raise ValueError("need n >= 1 and 0 <= r <= n")
    rng = random.Random(seed)
    for _ in range(REGULAR_RESTARTS):
        edges: set[Edge] = set()
        for _k in range(r):
            for _try in range(REGULAR_MATCHING_TRIES):
                perm = list(range(n))
                rng.shuffle(perm)
                cand = [(i, n + perm[i]) for i in range(n)]
                if not any(e in edges for e in cand):
                    edges.update(cand)
                    break
            else:
                break
        else:
            return Graph.from_edges(2 * n, edges)
    raise GenerationError(f"could not build a {r}-regular bipartite graph on 2x{n} vertices (seed {seed})")


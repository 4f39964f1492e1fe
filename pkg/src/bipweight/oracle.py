"""Exhaustive ground truth for small instances: weightings, parity factors,
and a census of connected bipartite graphs up to isomorphism."""

from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded
from .graph import Factor, Graph, bipartition
from .parity import ParitySpec
from .weighting import Weighting, WeightSet

WEIGHTING_BUDGET = 22
FACTOR_BUDGET = 16
CHUNK_BITS = 16


def _incidence(graph: Graph) -> np.ndarray:
    inc = np.zeros((graph.m, graph.n), dtype=np.int16)
    for i, (u, v) in enumerate(graph.edges):
        inc[i, u] = inc[i, v] = 1
    return inc


def _choice_chunks(m: int) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(offset, bits)`` blocks covering all 2^m 0/1 vectors in
    lexicographic order, edge 0 being the most significant position."""
    total = 1 << m
    shifts = np.arange(m - 1, -1, -1, dtype=np.int64)
    step = 1 << CHUNK_BITS
    for start in range(0, total, step):
        idx = np.arange(start, min(total, start + step), dtype=np.int64)
        yield start, ((idx[:, None] >> shifts) & 1).astype(np.int16)


def brute_force_weighting(graph: Graph, target_set: WeightSet, budget: int = WEIGHTING_BUDGET) -> Weighting | None:
    """Lexicographically first proper weighting (edges in sorted order,
    smaller weight first), or ``None`` if there is none."""
    if graph.m > budget:
        raise BudgetExceeded(f"{graph.m} edges exceeds the exhaustive weighting budget of {budget}")
    low = target_set.value[0]
    inc = _incidence(graph)
    base = low * inc.sum(axis=0)
    us = np.array([u for u, _ in graph.edges], dtype=np.int64)
    vs = np.array([v for _, v in graph.edges], dtype=np.int64)
    for start, bits in _choice_chunks(graph.m):
        colors = bits @ inc + base
        ok = np.all(colors[:, us] != colors[:, vs], axis=1)
        hits = np.flatnonzero(ok)
        if hits.size:
            row = bits[hits[0]]
            return Weighting(graph, target_set, tuple(int(low + b) for b in row), route="oracle")
    return None


class FactorTable:
    """Degree vectors of every edge subset of a small graph, for checking
    many specs against the same graph."""

    def __init__(self, graph: Graph, budget: int = FACTOR_BUDGET):
        if graph.m > budget:
            raise BudgetExceeded(f"{graph.m} edges exceeds the exhaustive factor budget of {budget}")
        self.graph = graph
        inc = _incidence(graph)
        blocks = [bits for _, bits in _choice_chunks(graph.m)]
        self.bits = np.concatenate(blocks) if blocks else np.zeros((1, 0), dtype=np.int16)
        self.degrees = self.bits @ inc if graph.m else np.zeros((1, graph.n), dtype=np.int16)

    def first(self, spec: ParitySpec) -> Factor | None:
        spec.check_graph(self.graph)
        g = np.array(spec.g)
        f = np.array(spec.f)
        d = self.degrees
        ok = np.all((d >= g) & (d <= f) & ((f - d) % 2 == 0), axis=1)
        hits = np.flatnonzero(ok)
        if not hits.size:
            return None
        row = self.bits[hits[0]]
        return Factor(self.graph, frozenset(e for e, b in zip(self.graph.edges, row) if b))


def brute_force_parity_factor(graph: Graph, spec: ParitySpec, budget: int = FACTOR_BUDGET) -> Factor | None:
    """First edge subset (same order as weightings, absent before present)
    meeting the spec, or ``None``."""
    return FactorTable(graph, budget).first(spec)


# ------------------------------------------------------------- census


def _refine(cells: list[list[int]], adj: Sequence[int]) -> list[list[int]]:
    """Split cells by neighbour counts into other cells until equitable.

    New cells are ordered by count, which keeps the result label-invariant.
    """
    changed = True
    while changed:
        changed = False
        for s in range(len(cells)):
            smask = 0
            for v in cells[s]:
                smask |= 1 << v
            out: list[list[int]] = []
            split = False
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault((adj[v] & smask).bit_count(), []).append(v)
                if len(groups) == 1:
                    out.append(cell)
                else:
                    split = True
                    out.extend(groups[k] for k in sorted(groups))
            if split:
                cells = out
                changed = True
                break
    return cells


def _leaf_code(order: list[int], adj: Sequence[int]) -> int:
    code = 0
    for i, v in enumerate(order):
        row = adj[v]
        for w in order[i + 1:]:
            code = (code << 1) | ((row >> w) & 1)
    return code


def canonical_code(graph: Graph) -> tuple[int, int]:
    """``(n, code)`` where ``code`` is the least upper-triangle adjacency
    bit-string over the leaves of an individualization-refinement tree.

    Isomorphic graphs get equal codes. Branches on twin vertices (equal
    neighbourhoods apart from each other) are skipped, since swapping twins
    is an automorphism fixing everything individualized so far.
    """
    adj = [sum(1 << x for x in graph.adj[v]) for v in range(graph.n)]
    best: list[int | None] = [None]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(cells, adj)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            code = _leaf_code([c[0] for c in cells], adj)
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        reps: list[int] = []
        for v in cells[target]:
            if any((adj[v] & ~(1 << r)) == (adj[r] & ~(1 << v)) for r in reps):
                continue
            reps.append(v)
            rest = [x for x in cells[target] if x != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    if graph.n:
        search([list(range(graph.n))])
    return graph.n, best[0] or 0


def graph_from_code(n: int, code: int) -> Graph:
    edges = []
    bit = n * (n - 1) // 2 - 1
    for i in range(n):
        for j in range(i + 1, n):
            if (code >> bit) & 1:
                edges.append((i, j))
            bit -= 1
    return Graph.from_edges(n, edges)


CENSUS_MAX = 10
_census: dict[int, list[Graph]] = {2: [Graph.from_edges(2, [(0, 1)])]}


def _census_level(n: int) -> list[Graph]:
    if n in _census:
        return _census[n]
    found: set[int] = set()
    for base in _census_level(n - 1):
        bip = bipartition(base)
        for side in (sorted(bip.side_u), sorted(bip.side_w)):
            for sub in range(1, 1 << len(side)):
                nbrs = [side[i] for i in range(len(side)) if sub >> i & 1]
                g = Graph.from_edges(n, list(base.edges) + [(x, n - 1) for x in nbrs])
                found.add(canonical_code(g)[1])
    _census[n] = [graph_from_code(n, c) for c in sorted(found)]
    return _census[n]


def enumerate_small_bipartite(n_max: int) -> Iterator[Graph]:
    """Every connected bipartite graph on 2..n_max vertices, once per
    isomorphism class, relabelled into canonical form.

    Each class on n vertices arises from one on n-1 vertices by adding a
    vertex joined to a non-empty subset of one side (delete any non-cut
    vertex to see this).
    """
    if n_max > CENSUS_MAX:
        raise BudgetExceeded(f"census limited to n <= {CENSUS_MAX}, asked for {n_max}")
    for n in range(2, n_max + 1):
        yield from _census_level(n)

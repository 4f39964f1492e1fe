"""Vertex-colouring {0,1}- and {1,2}-edge-weightings of bipartite graphs.

Routes, picked by :func:`synthesize_weighting`:

* a side of even size: a T-join on a spanning tree gives odd colours exactly
  on that side;
* both sides odd and the graph regular: backtracking search for a {1,2}
  weighting, shifted down by one for {0,1};
* otherwise: a parity factor for a purpose-built (g, f) spec around a
  minimum-degree vertex, mapped to weights.
"""

from __future__ import annotations

import json
import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .errors import BudgetExceeded, GraphParseError, HypothesisError
from .graph import Bipartition, Edge, Factor, Graph, bipartition, connected_without, edge_connectivity, is_connected
from .parity import ParitySpec, solve_parity_factor

log = logging.getLogger(__name__)


class WeightSet(Enum):
    ZERO_ONE = (0, 1)
    ONE_TWO = (1, 2)

    @property
    def label(self) -> str:
        return "".join(str(w) for w in self.value)

    @classmethod
    def parse(cls, text: str | Sequence[int]) -> WeightSet:
        if not isinstance(text, str):
            text = "".join(str(int(w)) for w in text)
        key = text.strip().strip("{}").replace(",", "").replace(" ", "")
        for ws in cls:
            if ws.label == key:
                return ws
        raise ValueError(f"unknown weight set {text!r}; expected 01 or 12")


@dataclass(frozen=True)
class Weighting:
    """Weights aligned with ``parent.edges``."""

    parent: Graph
    weight_set: WeightSet
    weights: tuple[int, ...]
    route: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if len(self.weights) != self.parent.m:
            raise ValueError(f"{len(self.weights)} weights for {self.parent.m} edges")

    def weight(self, u: int, v: int) -> int:
        return self.weights[self.parent.edge_index(u, v)]

    def colors(self) -> list[int]:
        c = [0] * self.parent.n
        for (u, v), w in zip(self.parent.edges, self.weights):
            c[u] += w
            c[v] += w
        return c

    def to_text(self) -> str:
        lines = [f"{u} {v} {w}" for (u, v), w in zip(self.parent.edges, self.weights)]
        lines += [f"c {v} {c}" for v, c in enumerate(self.colors())]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "weight_set": list(self.weight_set.value),
            "edges": [[u, v, w] for (u, v), w in zip(self.parent.edges, self.weights)],
            "colors": {str(v): c for v, c in enumerate(self.colors())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def parse_weighting(
    text: str, graph: Graph, weight_set: WeightSet | None = None, source: str | None = None
) -> Weighting:
    """Read a weighting document (text ``u v w`` / ``c v color`` or JSON)."""
    given: dict[Edge, int] = {}
    colors: dict[int, int] = {}
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
            for u, v, w in doc["edges"]:
                given[(min(u, v), max(u, v))] = int(w)
            colors = {int(v): int(c) for v, c in doc.get("colors", {}).items()}
            if weight_set is None and "weight_set" in doc:
                weight_set = WeightSet.parse(doc["weight_set"])
        except (ValueError, KeyError, TypeError) as exc:
            raise GraphParseError(f"bad JSON weighting: {exc}", None, source) from None
    else:
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            try:
                if parts[0] == "c" and len(parts) == 3:
                    colors[int(parts[1])] = int(parts[2])
                    continue
                if len(parts) != 3:
                    raise ValueError
                u, v, w = (int(p) for p in parts)
            except ValueError:
                raise GraphParseError(f"expected 'u v w' or 'c v color', got {line!r}", lineno, source) from None
            key = (min(u, v), max(u, v))
            if not graph.has_edge(*key):
                raise GraphParseError(f"{u} {v} is not an edge of the graph", lineno, source)
            if key in given:
                raise GraphParseError(f"edge {u} {v} weighted twice", lineno, source)
            given[key] = w

    missing = [e for e in graph.edges if e not in given]
    if missing:
        raise GraphParseError(f"no weight for edges {missing[:5]}", None, source)
    extra = [e for e in given if not graph.has_edge(*e)]
    if extra:
        raise GraphParseError(f"weights for non-edges {extra[:5]}", None, source)
    weights = tuple(given[e] for e in graph.edges)
    if weight_set is None:
        used = set(weights)
        if 0 in used and 2 in used:
            raise GraphParseError("weights mix 0 and 2; cannot infer the weight set", None, source)
        weight_set = WeightSet.ZERO_ONE if 0 in used else WeightSet.ONE_TWO
    wt = Weighting(graph, weight_set, weights)
    actual = wt.colors()
    for v, c in colors.items():
        if not 0 <= v < graph.n or actual[v] != c:
            raise GraphParseError(f"stated colour of vertex {v} does not match its weights", None, source)
    return wt


def verify_weighting(graph: Graph, wt: Weighting) -> list[Edge]:
    """Edges whose endpoints receive the same colour (empty means proper)."""
    if wt.parent != graph:
        raise ValueError("weighting belongs to a different graph")
    allowed = set(wt.weight_set.value)
    bad = [(e, w) for e, w in zip(graph.edges, wt.weights) if w not in allowed]
    if bad:
        raise ValueError(f"weights outside {sorted(allowed)}: {bad[:5]}")
    c = wt.colors()
    return [(u, v) for u, v in graph.edges if c[u] == c[v]]


def weighting_from_factor(graph: Graph, factor: Factor, weight_set: WeightSet, route: str = "") -> Weighting:
    """Factor edges get weight 1; the rest get 2 (for {1,2}) or 0 (for {0,1})."""
    other = 2 if weight_set is WeightSet.ONE_TWO else 0
    return Weighting(
        graph, weight_set, tuple(1 if e in factor.edges else other for e in graph.edges), route
    )


# ----------------------------------------------------------- even side


def tjoin_weighting(graph: Graph, bip: Bipartition, even_side: str, target_set: WeightSet) -> Weighting:
    """Weighting whose colours are odd exactly on ``even_side``.

    Builds a T-join F for T = that side on a BFS spanning tree: walking the
    tree bottom-up, a vertex takes its parent edge whenever its F-degree has
    the wrong parity. F gets weight 1 and every other edge 2 (or 0), so a
    vertex's colour has the parity of its F-degree.
    """
    side = bip.side(even_side)
    if len(side) % 2:
        raise HypothesisError("even side", f"side {even_side} has {len(side)} vertices")
    if graph.n < 2 or not is_connected(graph):
        raise HypothesisError("connected non-trivial graph")

    parent = [-1] * graph.n
    order = [0]
    parent[0] = 0
    q = deque([0])
    while q:
        v = q.popleft()
        for x in graph.adj[v]:
            if parent[x] == -1:
                parent[x] = v
                order.append(x)
                q.append(x)

    want = [1 if v in side else 0 for v in range(graph.n)]
    deg = [0] * graph.n
    chosen: set[Edge] = set()
    for v in reversed(order[1:]):
        if deg[v] % 2 != want[v]:
            p = parent[v]
            chosen.add((min(v, p), max(v, p)))
            deg[v] += 1
            deg[p] += 1
    return weighting_from_factor(graph, Factor(graph, frozenset(chosen)), target_set, route="t-join")


# --------------------------------------------------------- spec builders


def _check_lemma_pre(graph: Graph, bip: Bipartition, u: int) -> int:
    graph.check_vertex(u)
    delta = graph.min_degree()
    if u not in bip.side_u:
        raise HypothesisError("vertex on side U", f"vertex {u} lies on side W")
    if graph.degree(u) != delta:
        raise HypothesisError("minimum degree vertex", f"d({u}) = {graph.degree(u)}, minimum degree is {delta}")
    if len(bip.side_u) % 2 == 0 or len(bip.side_w) % 2 == 0:
        raise HypothesisError("both sides odd", f"sides have {len(bip.side_u)} and {len(bip.side_w)} vertices")
    return delta


def lemma1_spec(graph: Graph, bip: Bipartition, u: int) -> ParitySpec:
    """Spec whose factors give d_F(u) = delta, parity delta+1 on U-u,
    parity delta on W, and at most delta-2 on the degree-delta neighbours of u."""
    delta = _check_lemma_pre(graph, bip, u)
    big = graph.max_degree()
    if (big - delta) % 2:
        big += 1
    m = 0 if delta % 2 == 0 else -1
    tight = set(graph.neighbors_of_degree(u, delta))
    if tight and delta < 2:
        raise HypothesisError("minimum degree >= 2", "degree-delta neighbours would need degree delta-2 < 0")
    g, f = [0] * graph.n, [0] * graph.n
    for x in graph.vertices():
        if x == u:
            g[x] = delta
        elif x in bip.side_w:
            g[x] = m
        else:
            g[x] = m - 1
        if x in bip.side_u and x != u:
            f[x] = big + 1
        elif x in tight:
            f[x] = delta - 2
        else:
            f[x] = big
    return ParitySpec.from_lists(g, f)


def lemma2_spec(graph: Graph, bip: Bipartition, u: int) -> ParitySpec:
    """Spec whose factors give d_F(u) = 0, odd degrees on U-u, even degrees
    on W, and at least 2 on every neighbour of u."""
    _check_lemma_pre(graph, bip, u)
    big = graph.max_degree()
    big += big % 2
    nbrs = set(graph.neighbors(u))
    g, f = [0] * graph.n, [0] * graph.n
    for x in graph.vertices():
        if x in nbrs:
            g[x] = 2
        elif x == u or x in bip.side_w:
            g[x] = 0
        else:
            g[x] = -1
        if x == u:
            f[x] = 0
        elif x in bip.side_w:
            f[x] = big
        else:
            f[x] = big + 1
    return ParitySpec.from_lists(g, f)


def select_vertex(graph: Graph, bip: Bipartition, mode: WeightSet) -> int | None:
    """Least-id vertex satisfying the factor-route conditions for ``mode``.

    delta >= 4: a minimum-degree vertex whose removal keeps the graph connected.
    delta == 3: additionally at most two degree-3 neighbours (for {1,2}) or
    some neighbour of degree above 3 (for {0,1}).
    """
    if not is_connected(graph):
        raise HypothesisError("connected")
    if len(bip.side_u) % 2 == 0 or len(bip.side_w) % 2 == 0:
        raise HypothesisError("both sides odd")
    lam = edge_connectivity(graph)
    if lam < 3:
        raise HypothesisError("3-edge-connected", f"edge connectivity is {lam}")
    delta = graph.min_degree()
    for v in graph.vertices():
        if graph.degree(v) != delta or not connected_without(graph, v):
            continue
        if delta >= 4:
            return v
        if mode is WeightSet.ONE_TWO and len(graph.neighbors_of_degree(v, 3)) <= 2:
            return v
        if mode is WeightSet.ZERO_ONE and any(graph.degree(x) > 3 for x in graph.neighbors(v)):
            return v
    return None


# ------------------------------------------------------------ regular


SEARCH_BUDGET = 2_000_000


def search_weighting(graph: Graph, weight_set: WeightSet, node_budget: int = SEARCH_BUDGET) -> Weighting | None:
    """Complete backtracking search for a proper weighting.

    Edges are taken in BFS order so vertices complete early. When an edge is
    the last open edge at an endpoint, that endpoint's colour is forced by
    the weight, and weights forcing a clash with a finished neighbour are
    skipped. Returns ``None`` only after exhausting the tree; raises
    :class:`BudgetExceeded` past ``node_budget`` assignments.
    """
    n = graph.n
    pos = [-1] * n
    order_v: list[int] = []
    for s in range(n):
        if pos[s] != -1:
            continue
        pos[s] = len(order_v)
        order_v.append(s)
        q = deque([s])
        while q:
            v = q.popleft()
            for x in graph.adj[v]:
                if pos[x] == -1:
                    pos[x] = len(order_v)
                    order_v.append(x)
                    q.append(x)
    order = sorted(range(graph.m), key=lambda i: (max(pos[graph.edges[i][0]], pos[graph.edges[i][1]]),
                                                   min(pos[graph.edges[i][0]], pos[graph.edges[i][1]])))
    remaining = graph.degrees()
    partial = [0] * n
    color: list[int | None] = [None] * n
    weights = [0] * graph.m
    adj = graph.adj

    def clashes(v: int, c: int, skip: int) -> bool:
        return any(color[y] == c for y in adj[v] if y != skip)

    def candidates(k: int) -> list[int]:
        a, b = graph.edges[order[k]]
        out = []
        for w in weight_set.value:
            ca = partial[a] + w if remaining[a] == 1 else None
            cb = partial[b] + w if remaining[b] == 1 else None
            if ca is not None and (clashes(a, ca, b) or ca == cb):
                continue
            if cb is not None and clashes(b, cb, a):
                continue
            out.append(w)
        return out

    def assign(k: int, w: int, sign: int) -> None:
        eid = order[k]
        for v in graph.edges[eid]:
            partial[v] += sign * w
            remaining[v] -= sign
            color[v] = partial[v] if remaining[v] == 0 else None
        weights[eid] = w if sign > 0 else 0

    if graph.m == 0:
        return Weighting(graph, weight_set, ()) if n <= 1 else None
    stack = [candidates(0)]
    chosen: list[int] = []
    nodes = 0
    while stack:
        if not stack[-1]:
            stack.pop()
            if chosen:
                assign(len(chosen) - 1, chosen.pop(), -1)
            continue
        w = stack[-1].pop(0)
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(f"weighting search exceeded {node_budget} nodes")
        assign(len(chosen), w, +1)
        chosen.append(w)
        if len(chosen) == graph.m:
            return Weighting(graph, weight_set, tuple(weights), route="search")
        stack.append(candidates(len(chosen)))
    return None


def shift_regular(wt: Weighting) -> Weighting:
    """Map a {1,2} weighting to {0,1} by subtracting one from every weight."""
    if wt.weight_set is not WeightSet.ONE_TWO:
        raise ValueError("shift expects a {1,2} weighting")
    return Weighting(wt.parent, WeightSet.ZERO_ONE, tuple(w - 1 for w in wt.weights), wt.route)


# ---------------------------------------------------------- orchestrator


def _factor_route(graph: Graph, bip: Bipartition, u: int, target_set: WeightSet, route: str) -> Weighting | None:
    oriented = bip.oriented(u)
    if target_set is WeightSet.ONE_TWO:
        spec = lemma1_spec(graph, oriented, u)
    else:
        spec = lemma2_spec(graph, oriented, u)
    factor = solve_parity_factor(graph, spec)
    if factor is None:
        return None
    return weighting_from_factor(graph, factor, target_set, route)


def _fallback(graph: Graph, target_set: WeightSet, bip: Bipartition | None, why: HypothesisError) -> Weighting | None:
    from .oracle import brute_force_weighting

    log.info("hypothesis failed (%s); falling back", why)
    if bip is not None and len(bip.side_u) % 2 and len(bip.side_w) % 2:
        # Any factor for the constructed spec still yields a proper weighting.
        delta = graph.min_degree()
        for u in graph.vertices():
            if graph.degree(u) == delta:
                wt = _factor_route(graph, bip, u, target_set, "relaxed-factor")
                if wt is not None and not verify_weighting(graph, wt):
                    return wt
    found = brute_force_weighting(graph, target_set)
    if found is None:
        return None
    return Weighting(graph, target_set, found.weights, route="oracle")


def synthesize_weighting(
    graph: Graph,
    target_set: WeightSet,
    fallback: bool = False,
    search_budget: int = SEARCH_BUDGET,
) -> Weighting | None:
    """Construct a vertex-colouring ``target_set``-edge-weighting of a connected
    bipartite graph.

    Returns ``None`` only when a complete search proved that no weighting
    exists (the regular branch, or the oracle when ``fallback`` is on).
    Unmet hypotheses raise :class:`HypothesisError` unless ``fallback`` is set.
    """
    if graph.n == 2 and graph.m == 1:
        raise HypothesisError("no isolated edge", "a single edge never has a proper weighting")
    bip = bipartition(graph)
    try:
        if graph.n < 2 or graph.m == 0:
            raise HypothesisError("non-trivial graph")
        if not is_connected(graph):
            raise HypothesisError("connected")
        if bip is None:
            raise HypothesisError("bipartite", "odd cycle found")

        for side in ("U", "W"):
            if len(bip.side(side)) % 2 == 0:
                return tjoin_weighting(graph, bip, side, target_set)

        if graph.is_regular():
            found = search_weighting(graph, WeightSet.ONE_TWO, search_budget)
            if found is None:
                return None
            return found if target_set is WeightSet.ONE_TWO else shift_regular(found)

        u = select_vertex(graph, bip, target_set)
        if u is None:
            raise HypothesisError("qualifying minimum-degree vertex", "no vertex meets the factor-route conditions")
    except HypothesisError as exc:
        if not fallback:
            raise
        return _fallback(graph, target_set, bip, exc)

    route = "lemma1" if target_set is WeightSet.ONE_TWO else "lemma2"
    wt = _factor_route(graph, bip, u, target_set, route)
    if wt is None:
        raise RuntimeError(f"no parity factor for the {route} spec at vertex {u} despite the hypotheses holding")
    return wt

"""(g,f)-parity factors: a polynomial solver through a gadget reduction to
perfect matching, and Lovász deficiency certificates for infeasible specs.

A factor ``F`` satisfies a spec when ``g(v) <= d_F(v) <= f(v)`` and
``d_F(v) = f(v) (mod 2)`` at every vertex. ``g`` may be negative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import BudgetExceeded, GraphParseError
from .graph import Edge, Factor, Graph, norm_edge
from .matching import max_matching


@dataclass(frozen=True)
class ParitySpec:
    g: tuple[int, ...]
    f: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.g) != len(self.f):
            raise ValueError("g and f must cover the same vertices")
        for v, (lo, hi) in enumerate(zip(self.g, self.f)):
            if hi < 0:
                raise ValueError(f"f({v}) = {hi} is negative")
            if lo > hi:
                raise ValueError(f"g({v}) = {lo} exceeds f({v}) = {hi}")
            if (hi - lo) % 2:
                raise ValueError(f"g({v}) = {lo} and f({v}) = {hi} differ in parity")

    @classmethod
    def from_lists(cls, g: Sequence[int], f: Sequence[int]) -> ParitySpec:
        return cls(tuple(int(x) for x in g), tuple(int(x) for x in f))

    @classmethod
    def exact(cls, values: Sequence[int]) -> ParitySpec:
        """Spec with ``g = f``: every degree is pinned."""
        return cls.from_lists(values, values)

    @property
    def n(self) -> int:
        return len(self.f)

    def check_graph(self, graph: Graph) -> None:
        if self.n != graph.n:
            raise ValueError(f"spec covers {self.n} vertices, graph has {graph.n}")

    def violations(self, degrees: Sequence[int]) -> list[int]:
        """Vertices whose degree breaks the bounds or the parity."""
        return [
            v
            for v, d in enumerate(degrees)
            if d < self.g[v] or d > self.f[v] or (d - self.f[v]) % 2
        ]

    def is_satisfied_by(self, factor: Factor) -> bool:
        return not self.violations(factor.degrees())

    def to_text(self) -> str:
        return "".join(f"{v} {lo} {hi}\n" for v, (lo, hi) in enumerate(zip(self.g, self.f)))


def parse_spec(text: str, n: int, source: str | None = None) -> ParitySpec:
    """Parse ``v g f`` lines; every vertex ``0..n-1`` must appear exactly once."""
    g: dict[int, int] = {}
    f: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            v, lo, hi = (int(p) for p in parts)
        except ValueError:
            raise GraphParseError(f"expected 'v g f', got {line!r}", lineno, source) from None
        if not 0 <= v < n:
            raise GraphParseError(f"vertex {v} out of range for n={n}", lineno, source)
        if v in g:
            raise GraphParseError(f"vertex {v} listed twice", lineno, source)
        g[v], f[v] = lo, hi
    missing = [v for v in range(n) if v not in g]
    if missing:
        raise GraphParseError(f"no bounds for vertices {missing}", None, source)
    try:
        return ParitySpec.from_lists([g[v] for v in range(n)], [f[v] for v in range(n)])
    except ValueError as exc:
        raise GraphParseError(str(exc), None, source) from None


# ---------------------------------------------------------- certificates


@dataclass(frozen=True)
class Certificate:
    S: frozenset[int]
    T: frozenset[int]
    eta: int
    tau: int

    def __post_init__(self) -> None:
        if self.S & self.T:
            raise ValueError("S and T must be disjoint")


def eval_eta(graph: Graph, spec: ParitySpec, S: Iterable[int], T: Iterable[int]) -> tuple[int, int]:
    """Return ``(eta, tau)`` for the disjoint pair ``(S, T)``.

    ``tau`` counts components C of G-S-T with g(C) + e(C, T) odd and
    ``eta = f(S) - g(T) + sum_{x in T} d_{G-S}(x) - tau``.
    """
    spec.check_graph(graph)
    S, T = set(S), set(T)
    if S & T:
        raise ValueError(f"S and T overlap on {sorted(S & T)}")
    for v in S | T:
        graph.check_vertex(v)

    rest = [v for v in graph.vertices() if v not in S and v not in T]
    seen: set[int] = set()
    tau = 0
    for s in rest:
        if s in seen:
            continue
        seen.add(s)
        stack, comp = [s], [s]
        while stack:
            v = stack.pop()
            for x in graph.adj[v]:
                if x not in seen and x not in S and x not in T:
                    seen.add(x)
                    comp.append(x)
                    stack.append(x)
        g_c = sum(spec.g[v] for v in comp)
        e_ct = sum(1 for v in comp for x in graph.adj[v] if x in T)
        tau += (g_c + e_ct) % 2

    d_rest = sum(1 for x in T for y in graph.adj[x] if y not in S)
    eta = sum(spec.f[v] for v in S) - sum(spec.g[v] for v in T) + d_rest - tau
    return eta, tau


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _components(adj_masks: Sequence[int], region: int) -> list[int]:
    comps = []
    left = region
    while left:
        low = left & -left
        comp = low
        frontier = low
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            grow = adj_masks[b.bit_length() - 1] & region & ~comp
            comp |= grow
            frontier |= grow
        comps.append(comp)
        left &= ~comp
    return comps


class CertificateScanner:
    """Evaluates eta over all 3^n disjoint pairs (S, T) of a fixed graph.

    Pairs are grouped by the leftover set R = V - S - T, whose components are
    shared by every split of V - R into S and T; each group is then scored
    for a whole batch of specs at once with numpy.
    """

    def __init__(self, graph: Graph):
        self.graph = graph
        n = graph.n
        self.n = n
        self.adj_masks = [sum(1 << x for x in graph.adj[v]) for v in range(n)]
        A = np.zeros((n, n), dtype=np.int64)
        for u, v in graph.edges:
            A[u, v] = A[v, u] = 1
        self.A = A
        self.deg = A.sum(axis=1)
        self._groups: list[tuple] | None = None

    def _build_groups(self) -> list[tuple]:
        n = self.n
        full = (1 << n) - 1
        pow2 = 1 << np.arange(n, dtype=np.int64)
        groups = []
        for R in range(1 << n):
            X = full & ~R
            xs = np.array(_bits(X), dtype=np.int64)
            k = len(xs)
            sub = np.arange(1 << k, dtype=np.int64)
            tsel = (sub[:, None] >> np.arange(k)) & 1
            T_ind = np.zeros((1 << k, n), dtype=np.int64)
            T_ind[:, xs] = tsel
            S_ind = np.zeros((1 << k, n), dtype=np.int64)
            S_ind[:, xs] = 1 - tsel
            # sum_{x in T} d_{G-S}(x) = d(T) - e(T, S)
            dsum = T_ind @ self.deg - ((T_ind @ self.A) * S_ind).sum(axis=1)
            comps = _components(self.adj_masks, R)
            C_ind = np.zeros((len(comps), n), dtype=np.int64)
            for i, c in enumerate(comps):
                C_ind[i, list(_bits(c))] = 1
            epar = (T_ind @ (self.A @ C_ind.T)) & 1
            groups.append((S_ind, T_ind, dsum, C_ind, epar, S_ind @ pow2, T_ind @ pow2))
        return groups

    def groups(self) -> list[tuple]:
        if self._groups is None:
            self._groups = self._build_groups()
        return self._groups

    def _group_eta(self, grp: tuple, G: np.ndarray, F: np.ndarray) -> np.ndarray:
        S_ind, T_ind, dsum, C_ind, epar, _, _ = grp
        eta = F @ S_ind.T - G @ T_ind.T + dsum[None, :]
        if C_ind.shape[0]:
            gpar = (G @ C_ind.T) & 1
            tau = gpar.sum(axis=1)[:, None] + epar.sum(axis=1)[None, :] - 2 * (gpar @ epar.T)
            eta = eta - tau
        return eta

    def min_eta(self, specs: Sequence[ParitySpec]) -> np.ndarray:
        """Minimum eta over all disjoint pairs, one entry per spec."""
        G = np.array([s.g for s in specs], dtype=np.int64).reshape(len(specs), self.n)
        F = np.array([s.f for s in specs], dtype=np.int64).reshape(len(specs), self.n)
        best = np.full(len(specs), np.iinfo(np.int64).max, dtype=np.int64)
        for grp in self.groups():
            np.minimum(best, self._group_eta(grp, G, F).min(axis=1), out=best)
        return best

    def eta_parities(self, spec: ParitySpec) -> set[int]:
        """Set of eta mod 2 values seen over all pairs (a single value in theory)."""
        G = np.array([spec.g], dtype=np.int64)
        F = np.array([spec.f], dtype=np.int64)
        seen: set[int] = set()
        for grp in self.groups():
            seen.update(int(x) for x in np.unique(self._group_eta(grp, G, F) & 1))
        return seen

    def best(self, spec: ParitySpec) -> Certificate:
        """Lexicographically least pair among those of minimum eta."""
        G = np.array([spec.g], dtype=np.int64)
        F = np.array([spec.f], dtype=np.int64)
        target = int(self.min_eta([spec])[0])
        ties: list[tuple[int, int]] = []
        for grp in self.groups():
            eta = self._group_eta(grp, G, F)[0]
            for i in np.flatnonzero(eta == target):
                ties.append((int(grp[5][i]), int(grp[6][i])))
        s_mask, t_mask = min(ties, key=lambda st: (_bits(st[0]), _bits(st[1])))
        S, T = frozenset(_bits(s_mask)), frozenset(_bits(t_mask))
        eta, tau = eval_eta(self.graph, spec, S, T)
        assert eta == target
        return Certificate(S, T, eta, tau)


CERTIFICATE_LIMIT = 14


def find_certificate(graph: Graph, spec: ParitySpec, limit: int = CERTIFICATE_LIMIT) -> Certificate | None:
    """Exhaustive search for a pair (S, T) with negative eta.

    Returns the minimum-eta pair (lexicographically least among ties) when that
    minimum is negative, else ``None``. Costs 3^n, so refuses ``n > limit``.
    """
    spec.check_graph(graph)
    if graph.n > limit:
        raise BudgetExceeded(f"certificate search over 3^{graph.n} pairs exceeds the limit n <= {limit}")
    scanner = CertificateScanner(graph)
    if scanner.min_eta([spec])[0] >= 0:
        return None
    return scanner.best(spec)


# ------------------------------------------------------------- reduction


class Reduction(NamedTuple):
    h: Graph
    back_map: dict[Edge, Edge | None]


def normalized_bounds(graph: Graph, spec: ParitySpec) -> list[tuple[int, int]] | None:
    """Tighten each ``[g, f]`` window to the achievable degrees of the same parity.

    Returns ``None`` when some vertex has an empty window.
    """
    out = []
    for v in graph.vertices():
        d = graph.degree(v)
        hi = spec.f[v]
        if hi > d:
            hi = d if (hi - d) % 2 == 0 else d - 1
        lo = max(spec.g[v], spec.f[v] % 2)
        if lo > hi:
            return None
        out.append((lo, hi))
    return out


def reduce_to_matching(graph: Graph, spec: ParitySpec) -> Reduction | None:
    """Build a graph H that has a perfect matching iff a parity factor exists.

    Each vertex with window [lo, hi] gets (hi - lo)/2 slack triangles v-x-y;
    a triangle either matches x-y internally (absorbing nothing) or takes two
    units of v's degree. Every vertex of this augmented graph, of degree d and
    target t (t = 1 for slack vertices), is then replaced by d external nodes,
    one per incident edge, plus d - t internal nodes joined to all externals.
    Edge-to-edge links in H map back to original edges; everything else maps
    to ``None``. Returns ``None`` when some window is empty.
    """
    spec.check_graph(graph)
    bounds = normalized_bounds(graph, spec)
    if bounds is None:
        return None

    aug_edges: list[tuple[int, int]] = list(graph.edges)
    target = [hi for _, hi in bounds]
    nxt = graph.n
    for v, (lo, hi) in enumerate(bounds):
        for _ in range((hi - lo) // 2):
            x, y = nxt, nxt + 1
            nxt += 2
            aug_edges.extend([(v, x), (v, y), (x, y)])
            target.extend([1, 1])
    n_aug = nxt

    incident: list[list[int]] = [[] for _ in range(n_aug)]
    for eid, (a, b) in enumerate(aug_edges):
        incident[a].append(eid)
        incident[b].append(eid)

    ext: dict[tuple[int, int], int] = {}
    h_edges: list[Edge] = []
    next_node = 0
    for a in range(n_aug):
        for eid in incident[a]:
            ext[(a, eid)] = next_node
            next_node += 1
    for a in range(n_aug):
        d, t = len(incident[a]), target[a]
        if t > d:
            return None
        outs = [ext[(a, eid)] for eid in incident[a]]
        for _ in range(d - t):
            h_edges.extend((o, next_node) for o in outs)
            next_node += 1

    back_map: dict[Edge, Edge | None] = {}
    for eid, (a, b) in enumerate(aug_edges):
        key = norm_edge(ext[(a, eid)], ext[(b, eid)])
        h_edges.append(key)
        back_map[key] = (a, b) if eid < graph.m else None
    for e in h_edges:
        back_map.setdefault(norm_edge(*e), None)
    return Reduction(Graph.from_edges(next_node, h_edges), back_map)


def solve_parity_factor(graph: Graph, spec: ParitySpec) -> Factor | None:
    """Find a (g,f)-parity factor, or return ``None`` if none exists."""
    red = reduce_to_matching(graph, spec)
    if red is None:
        return None
    matching = max_matching(red.h)
    if 2 * len(matching) != red.h.n:
        return None
    edges = frozenset(
        red.back_map[e] for e in matching.edges if red.back_map[e] is not None
    )
    factor = Factor(graph, edges)
    assert spec.is_satisfied_by(factor), "matching did not lift to a valid factor"
    return factor

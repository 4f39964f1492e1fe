import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipweight.errors import BudgetExceeded, GraphParseError
from bipweight.graph import Graph, gen_complete_bipartite
from bipweight.matching import max_matching
from bipweight.oracle import brute_force_parity_factor, enumerate_small_bipartite
from bipweight.parity import (
    Certificate,
    CertificateScanner,
    ParitySpec,
    eval_eta,
    find_certificate,
    normalized_bounds,
    parse_spec,
    reduce_to_matching,
    solve_parity_factor,
)
from bipweight.weighting import lemma2_spec
from bipweight.graph import bipartition

from helpers import cycle, factor_exists_brute, max_matching_brute, path, random_spec

P3 = path(3)  # a=0, b=1, c=2
P3_BAD = ParitySpec.exact([1, 0, 1])
P3_FORCED = ParitySpec.exact([1, 2, 1])
C4_EVEN = ParitySpec.from_lists([0] * 4, [2] * 4)


def test_spec_validation():
    with pytest.raises(ValueError, match="parity"):
        ParitySpec.from_lists([0], [1])
    with pytest.raises(ValueError, match="exceeds"):
        ParitySpec.from_lists([3], [1])
    with pytest.raises(ValueError, match="negative"):
        ParitySpec.from_lists([-2], [-2])
    ParitySpec.from_lists([-2, -1], [0, 1])


def test_parse_spec():
    spec = parse_spec("# comment\n0 1 1\n2 1 3\n1 -1 1\n", 3)
    assert spec.g == (1, -1, 1) and spec.f == (1, 1, 3)
    with pytest.raises(GraphParseError, match="no bounds"):
        parse_spec("0 1 1\n", 2)
    with pytest.raises(GraphParseError, match="twice"):
        parse_spec("0 1 1\n0 1 1\n1 0 0\n", 2)
    with pytest.raises(GraphParseError):
        parse_spec("0 0 1\n", 1)
    assert parse_spec(P3_BAD.to_text(), 3) == P3_BAD


def test_eval_eta_examples():
    assert eval_eta(cycle(4), C4_EVEN, set(), set()) == (0, 0)
    assert eval_eta(P3, P3_BAD, {1}, set()) == (-2, 2)
    assert eval_eta(P3, P3_BAD, set(), {1}) == (2, 0)
    with pytest.raises(ValueError):
        eval_eta(P3, P3_BAD, {1}, {1})


def test_find_certificate_examples():
    cert = find_certificate(P3, P3_BAD)
    assert cert == Certificate(frozenset({1}), frozenset(), -2, 2)
    assert find_certificate(cycle(4), C4_EVEN) is None
    assert find_certificate(path(2), ParitySpec.exact([1, 1])) is None


def test_find_certificate_limit():
    g = Graph.from_edges(15, [(i, i + 1) for i in range(14)])
    with pytest.raises(BudgetExceeded):
        find_certificate(g, ParitySpec.exact([0] * 15))


def test_certificate_is_min_and_lexicographic():
    rng = random.Random(5)
    for g in list(enumerate_small_bipartite(5)):
        for _ in range(10):
            spec = random_spec(g, rng)
            cert = find_certificate(g, spec)
            values = {}
            verts = range(g.n)
            for labels in itertools.product((0, 1, 2), repeat=g.n):
                S = frozenset(v for v in verts if labels[v] == 1)
                T = frozenset(v for v in verts if labels[v] == 2)
                values[(S, T)] = eval_eta(g, spec, S, T)[0]
            low = min(values.values())
            if low >= 0:
                assert cert is None
                continue
            ties = [k for k, v in values.items() if v == low]
            S, T = min(ties, key=lambda st: (sorted(st[0]), sorted(st[1])))
            assert (cert.S, cert.T, cert.eta) == (S, T, low)
            assert cert.eta == eval_eta(g, spec, cert.S, cert.T)[0]


def test_reduction_single_edge():
    red = reduce_to_matching(path(2), ParitySpec.exact([1, 1]))
    assert (red.h.n, red.h.m) == (2, 1)
    assert red.back_map[(0, 1)] == (0, 1)
    assert len(max_matching(red.h)) == 1


def test_reduction_p3_forced_and_infeasible():
    red = reduce_to_matching(P3, P3_FORCED)
    assert 2 * max_matching_brute(red.h) == red.h.n
    assert solve_parity_factor(P3, P3_FORCED).sorted_edges() == [(0, 1), (1, 2)]
    red = reduce_to_matching(P3, P3_BAD)
    assert red is not None
    assert 2 * max_matching_brute(red.h) < red.h.n
    assert solve_parity_factor(P3, P3_BAD) is None


def test_reduction_empty_window_marker():
    # vertex 1 needs degree >= 4 but has degree 2
    assert reduce_to_matching(P3, ParitySpec.from_lists([0, 4, 0], [2, 4, 2])) is None
    assert normalized_bounds(P3, ParitySpec.from_lists([-2, -1, 0], [6, 5, 0])) == [(0, 0), (1, 1), (0, 0)]


def test_solve_c4():
    F = solve_parity_factor(cycle(4), C4_EVEN)
    assert F is not None
    assert all(d % 2 == 0 for d in F.degrees())


def test_solve_k35_lemma2_spec():
    g = gen_complete_bipartite(3, 5)
    bip = bipartition(g).oriented(3)
    spec = lemma2_spec(g, bip, 3)
    F = solve_parity_factor(g, spec)
    deg = F.degrees()
    assert deg[3] == 0
    assert all(deg[x] % 2 == 1 for x in (4, 5, 6, 7))
    assert all(deg[y] % 2 == 0 and deg[y] >= 2 for y in (0, 1, 2))
    witness = [(y, x) for y in (0, 1, 2) for x in (4, 5, 6, 7)]
    assert len(witness) == 12
    w_deg = [0] * 8
    for a, b in witness:
        w_deg[a] += 1
        w_deg[b] += 1
    assert not spec.violations(w_deg)


def test_brute_force_factor_examples():
    assert brute_force_parity_factor(P3, P3_FORCED).sorted_edges() == [(0, 1), (1, 2)]
    assert brute_force_parity_factor(P3, P3_BAD) is None
    assert len(brute_force_parity_factor(cycle(4), C4_EVEN)) == 0
    with pytest.raises(BudgetExceeded):
        brute_force_parity_factor(gen_complete_bipartite(4, 5), ParitySpec.exact([0] * 9))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_solver_sound_and_agrees_with_enumeration(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    g = Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.45])
    if g.m > 10:
        return
    spec = random_spec(g, rng)
    F = solve_parity_factor(g, spec)
    assert (F is not None) == factor_exists_brute(g, spec)
    if F is not None:
        assert not spec.violations(F.degrees())


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_duality_and_constant_eta_parity(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    g = Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4])
    spec = random_spec(g, rng)
    scanner = CertificateScanner(g)
    assert scanner.eta_parities(spec) == {sum(spec.f) % 2}
    feasible = solve_parity_factor(g, spec) is not None
    assert feasible == (find_certificate(g, spec) is None)


def test_scanner_matches_direct_evaluation():
    rng = random.Random(2)
    g = gen_complete_bipartite(2, 3)
    specs = [random_spec(g, rng) for _ in range(20)]
    mins = CertificateScanner(g).min_eta(specs)
    for spec, got in zip(specs, mins):
        direct = min(
            eval_eta(g, spec, {v for v in range(5) if lab[v] == 1}, {v for v in range(5) if lab[v] == 2})[0]
            for lab in itertools.product((0, 1, 2), repeat=5)
        )
        assert got == direct

"""Vertex-colouring {0,1}- and {1,2}-edge-weightings of bipartite graphs via
parity factors, with exhaustive oracles for small instances."""

from .errors import BudgetExceeded, GenerationError, GraphParseError, HypothesisError
from .graph import (
    Bipartition,
    Factor,
    Graph,
    bipartition,
    connected_without,
    edge_connectivity,
    gen_complete_bipartite,
    gen_gamma_pair,
    gen_regular_bipartite,
    gen_theta,
    is_connected,
    is_two_connected,
    parse_graph,
)
from .matching import max_matching
from .oracle import brute_force_parity_factor, brute_force_weighting, enumerate_small_bipartite
from .parity import (
    Certificate,
    ParitySpec,
    eval_eta,
    find_certificate,
    parse_spec,
    reduce_to_matching,
    solve_parity_factor,
)
from .weighting import (
    Weighting,
    WeightSet,
    lemma1_spec,
    lemma2_spec,
    parse_weighting,
    select_vertex,
    synthesize_weighting,
    tjoin_weighting,
    verify_weighting,
)

__all__ = [name for name in dir() if not name.startswith("_")]

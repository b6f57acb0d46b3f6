from __future__ import annotations

import json
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aspforge.graphgen import (
    GenParams,
    InfeasibleEdgeCount,
    RPOGraph,
    assign_operations,
    build_rule_graph,
    dedup_key,
    edge_range,
    expand_to_rp_graph,
    generate_graph,
)


def brute_force_max_edges(n: int, cap: int) -> int:
    """Largest edge set over all DAGs on n nodes with sink 0 and in-degree <= cap."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v and u != 0]
    best = -1
    for mask in range(1 << len(pairs)):
        g = nx.DiGraph()
        g.add_nodes_from(range(n))
        g.add_edges_from(p for i, p in enumerate(pairs) if mask >> i & 1)
        if not nx.is_directed_acyclic_graph(g) or any(d > cap for _, d in g.in_degree()):
            continue
        if all(nx.has_path(g, v, 0) for v in range(n)):
            best = max(best, g.number_of_edges())
    return best


def test_two_nodes_one_edge():
    assert build_rule_graph(GenParams(n_rules=2, target_edges=1, seed=4)).edges == [(1, 0)]


def test_four_nodes_spanning():
    for seed in range(20):
        g = build_rule_graph(GenParams(n_rules=4, target_edges=3, seed=seed)).to_nx()
        assert all(nx.has_path(g, v, 0) for v in g)


def test_three_nodes_four_edges_infeasible():
    with pytest.raises(InfeasibleEdgeCount) as e:
        build_rule_graph(GenParams(n_rules=3, target_edges=4))
    assert (e.value.low, e.value.high) == (2, 3)


@pytest.mark.parametrize("n, cap", [(2, 1), (3, 1), (3, 3), (4, 2), (4, 3)])
def test_edge_range_matches_enumeration(n, cap):
    assert edge_range(n, cap)[1] == brute_force_max_edges(n, cap)


def test_rule_graph_invariants_1000():
    rng = random.Random(0)
    for i in range(1000):
        n = rng.randint(1, 7)
        cap = rng.randint(1, 3)
        lo, hi = edge_range(n, cap)
        m = rng.randint(lo, hi)
        g = build_rule_graph(GenParams(n_rules=n, target_edges=m, max_body_predicates=cap, seed=i)).to_nx()
        assert nx.is_directed_acyclic_graph(g)
        assert g.number_of_edges() == m
        assert [v for v in g if g.out_degree(v) == 0] == [0]
        assert all(nx.has_path(g, v, 0) for v in g)
        assert max((d for _, d in g.in_degree()), default=0) <= cap


def test_single_rule_pipeline():
    params = GenParams(n_rules=1, extra_predicates=0, extra_edges=0)
    g = expand_to_rp_graph(build_rule_graph(params), params)
    assert sorted(g.graph.edges()) == [("P0", "R0"), ("R0", "P1")] or sorted(g.graph.edges()) == [("P1", "R0"), ("R0", "P0")]


def test_intermediary_predicate():
    params = GenParams(n_rules=2, target_edges=1, extra_predicates=0, extra_edges=0)
    g = expand_to_rp_graph(build_rule_graph(params), params)
    (mid,) = [p for p in g.predicates if g.graph.has_edge("R1", p)]
    assert g.graph.has_edge(mid, "R0")


def _check_rp(g: RPOGraph, cap: int):
    assert nx.is_directed_acyclic_graph(g.graph)
    for u, v in g.graph.edges():
        assert g.graph.nodes[u]["kind"] != g.graph.nodes[v]["kind"]
    for r in g.rules:
        assert 1 <= g.graph.in_degree(r) <= cap
        assert g.graph.out_degree(r) >= 1


@settings(max_examples=200, deadline=None)
@given(
    st.integers(1, 6), st.integers(1, 3), st.integers(0, 3), st.integers(0, 4), st.integers(0, 10**6), st.data()
)
def test_rp_graph_bipartite_acyclic(n, cap, xp, xe, seed, data):
    lo, hi = edge_range(n, cap)
    m = data.draw(st.integers(lo, hi))
    params = GenParams(n_rules=n, target_edges=m, max_body_predicates=cap,
                       extra_predicates=xp, extra_edges=xe, seed=seed)
    g = generate_graph(params)
    _check_rp(g, cap)
    for u, v, d in g.graph.edges(data=True):
        p = u if u.startswith("P") else v
        assert d["type"] == g.ptype(p)


def test_degenerate_probabilities():
    for p, t in [(0.0, "P"), (1.0, "SNDN")]:
        g = generate_graph(GenParams(n_rules=4, target_edges=4, p_strong_neg=p, p_default_neg=p, seed=9))
        assert {g.ptype(x) for x in g.predicates} == {t}


def test_reproducible():
    params = GenParams(n_rules=5, target_edges=6, p_strong_neg=0.5, p_default_neg=0.5, seed=123)
    a, b = generate_graph(params), generate_graph(params)
    assert json.dumps(a.to_json(), sort_keys=True) == json.dumps(b.to_json(), sort_keys=True)
    assert [a.ptype(p) for p in a.predicates] == [b.ptype(p) for p in b.predicates]


def test_dedup_relabel_invariant():
    g = generate_graph(GenParams(n_rules=4, target_edges=4, seed=2))
    perm = list(g.predicates)
    random.Random(0).shuffle(perm)
    mapping = dict(zip(g.predicates, perm))
    assert dedup_key(RPOGraph(nx.relabel_nodes(g.graph, mapping))) == dedup_key(g)


def test_dedup_edge_count_differs():
    a = generate_graph(GenParams(n_rules=3, target_edges=2, extra_edges=0, extra_predicates=0, seed=1))
    b = generate_graph(GenParams(n_rules=3, target_edges=3, extra_edges=0, extra_predicates=0, seed=1))
    assert dedup_key(a) != dedup_key(b)


def test_dedup_minimal_graphs_coincide():
    keys = set()
    for seed in range(10):
        params = GenParams(n_rules=2, target_edges=1, extra_predicates=0, extra_edges=0,
                           p_strong_neg=0, p_default_neg=0, seed=seed)
        keys.add(dedup_key(generate_graph(params)))
    assert len(keys) == 1


def test_unfilled_quota_recorded():
    params = GenParams(n_rules=1, max_body_predicates=1, extra_predicates=2, extra_edges=0)
    g = generate_graph(params)
    assert g.metadata["extra_predicates_unplaced"] == 2

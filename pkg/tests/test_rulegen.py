from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

from aspforge.core import negation_flip
from aspforge.graphgen import GenParams, RPOGraph, edge_range, generate_graph
from aspforge.grounder import safety_check
from aspforge.parser import parse_rule
from aspforge.rulegen import (
    ArityRangeEmpty,
    HeadPolicy,
    Rejected,
    assign_variables,
    emit_rules,
    flip_distance,
    generate_rules,
    repair,
)


def hand_graph(types: dict[str, str], edges: list[tuple[str, str]]) -> RPOGraph:
    g = nx.DiGraph()
    for u, v in edges:
        for n in (u, v):
            if n.startswith("R"):
                g.add_node(n, kind="rule")
            else:
                g.add_node(n, kind="pred", type=types[n])
        g.add_edge(u, v, type=types[u if u.startswith("P") else v])
    return RPOGraph(g)


def random_graphs(count: int, seed: int = 0):
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(1, 5)
        lo, hi = edge_range(n, 3)
        yield generate_graph(GenParams(n_rules=n, target_edges=rng.randint(lo, hi),
                                       extra_predicates=rng.randint(0, 2), extra_edges=rng.randint(0, 2),
                                       p_strong_neg=0.4, p_default_neg=0.4, seed=i))


def test_arity_one_chain_shares_variable():
    g = hand_graph({"P0": "P", "P1": "P"}, [("P0", "R0"), ("R0", "P1")])
    sigs, bindings = assign_variables(g, (1, 1), seed=3)
    (rule,) = emit_rules(g, sigs, bindings)
    assert len(rule.body) == 1 and rule.head[0].atom.args == rule.body[0].literal.atom.args
    assert rule.head[0].atom.arity == 1


def test_split_and_disjunction():
    types = {"P0": "P", "P1": "P", "P2": "P"}
    g = hand_graph(types, [("P1", "R0"), ("R0", "P0"), ("R0", "P2")])
    sigs, bindings = assign_variables(g, (0, 0))
    split = emit_rules(g, sigs, bindings, HeadPolicy.SPLIT)
    assert sorted(map(str, split)) == ["P0 :- P1.", "P2 :- P1."]
    (disj,) = emit_rules(g, sigs, bindings, HeadPolicy.DISJUNCTION)
    assert str(disj) == "P0 | P2 :- P1."


def test_sndn_body_literal():
    g = hand_graph({"P0": "SNDN", "P1": "P", "P2": "P"}, [("P0", "R0"), ("P2", "R0"), ("R0", "P1")])
    sigs, bindings = assign_variables(g, (0, 0))
    (rule,) = emit_rules(g, sigs, bindings)
    assert "not -P0" in [str(b) for b in rule.body]


def test_empty_arity_range():
    g = hand_graph({"P0": "P", "P1": "P"}, [("P0", "R0"), ("R0", "P1")])
    with pytest.raises(ArityRangeEmpty):
        assign_variables(g, (2, 1))


def test_repair_examples():
    assert str(repair(parse_rule("p(X) :- not q(X)."))) == "p(X) :- -q(X)."
    safe = parse_rule("p(X) :- q(X).")
    assert repair(safe) == safe
    with pytest.raises(Rejected):
        repair(parse_rule("p(X) :- not q(Y), r."))


def test_rejection_is_exhaustive():
    r = parse_rule("p(X) :- not q(Y), not s(Y), t.")
    for k in range(len(r.body) + 1):
        for idx in itertools.combinations(range(len(r.body)), k):
            body = tuple(negation_flip(b) if i in idx else b for i, b in enumerate(r.body))
            assert safety_check(type(r)(r.head, body))
    with pytest.raises(Rejected):
        repair(r)


def test_repair_minimality():
    r = parse_rule("h(X, Y) :- not a(X), not b(Y), not c(X).")
    fixed = repair(r)
    assert not safety_check(fixed)
    best = min(
        k for k in range(4) for idx in itertools.combinations(range(3), k)
        if not safety_check(type(r)(r.head, tuple(negation_flip(b) if i in idx else b for i, b in enumerate(r.body))))
    )
    assert flip_distance(r, fixed) == best == 2


def test_generated_rules_safe_and_consistent_arity():
    total = 0
    for i, g in enumerate(random_graphs(400)):
        policy = HeadPolicy.DISJUNCTION if i % 2 else HeadPolicy.SPLIT
        rs = generate_rules(g, policy, seed=i)
        arities: dict[str, set[int]] = {}
        for r in rs.rules:
            total += 1
            assert not safety_check(r)
            assert parse_rule(str(r)) == r
            for a in r.atoms():
                arities.setdefault(a.predicate, set()).add(a.arity)
            if policy is HeadPolicy.SPLIT:
                assert len(r.head) == 1
        assert all(len(v) == 1 for v in arities.values())
        if policy is HeadPolicy.DISJUNCTION:
            multi = sum(len(g.heads(r)) >= 2 for r in g.rules)
            assert sum(r.is_disjunctive for r in rs.rules) <= multi
    assert total >= 1000

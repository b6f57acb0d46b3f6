"""ASP graph construction: rule graph, rule-predicate graph, operation types.

Every random draw goes through :class:`random.Random` (Mersenne Twister)
seeded with a string ``"<seed>/<stage>"``, so each stage is reproducible on
its own and across platforms.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import asdict, dataclass, field

import networkx as nx

from .core import AspError

EDGE_TYPES = ("P", "SN", "DN", "SNDN")


class InfeasibleEdgeCount(AspError):
    def __init__(self, target: int, low: int, high: int):
        self.target, self.low, self.high = target, low, high
        super().__init__(f"target_edges={target} outside the feasible range [{low}, {high}]")


@dataclass(frozen=True)
class GenParams:
    n_rules: int = 3
    target_edges: int | None = None  # None: n_rules - 1
    extra_predicates: int = 1
    extra_edges: int = 1
    max_body_predicates: int = 3
    p_strong_neg: float = 0.3
    p_default_neg: float = 0.3
    seed: int = 0

    def __post_init__(self):
        if self.n_rules < 1:
            raise ValueError("n_rules must be at least 1")
        if self.max_body_predicates < 1:
            raise ValueError("max_body_predicates must be at least 1")
        for name in ("p_strong_neg", "p_default_neg"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {p}")
        if self.extra_predicates < 0 or self.extra_edges < 0:
            raise ValueError("extra counts must be non-negative")

    @property
    def edges(self) -> int:
        return self.n_rules - 1 if self.target_edges is None else self.target_edges

    def rng(self, stage: str) -> random.Random:
        return random.Random(f"{self.seed}/{stage}")


def edge_range(n_rules: int, max_in_degree: int) -> tuple[int, int]:
    """Feasible edge counts for a single-sink DAG on ``n_rules`` nodes.

    In any topological order the node at position k can take at most
    min(k, max_in_degree) incoming edges; the sink comes last because every
    node reaches it.
    """
    return n_rules - 1, sum(min(k, max_in_degree) for k in range(n_rules))


@dataclass
class RuleGraph:
    n_rules: int
    edges: list[tuple[int, int]]

    def to_nx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n_rules))
        g.add_edges_from(self.edges)
        return g


def build_rule_graph(params: GenParams) -> RuleGraph:
    """Random DAG whose unique sink is node 0, with exactly ``params.edges`` edges.

    In-degree is capped at ``max_body_predicates`` because each incoming edge
    becomes a body predicate of the target rule.
    """
    n, cap = params.n_rules, params.max_body_predicates
    low, high = edge_range(n, cap)
    target = params.edges
    if not low <= target <= high:
        raise InfeasibleEdgeCount(target, low, high)
    rng = params.rng("rule_graph")
    g = nx.DiGraph()
    g.add_nodes_from(range(n))

    connected = [0]
    others = list(range(1, n))
    rng.shuffle(others)
    for node in others:
        parents = [c for c in connected if g.in_degree(c) < cap]
        g.add_edge(node, rng.choice(parents))
        connected.append(node)

    missing = target - g.number_of_edges()
    if missing:
        order = list(nx.lexicographical_topological_sort(g))
        pos = {v: i for i, v in enumerate(order)}
        cands = [(u, v) for u in order for v in order
                 if u != 0 and pos[u] < pos[v] and not g.has_edge(u, v)]
        rng.shuffle(cands)
        for u, v in cands:
            if not missing:
                break
            if g.in_degree(v) < cap:
                g.add_edge(u, v)
                missing -= 1
    return RuleGraph(n, sorted(g.edges()))


@dataclass
class RPOGraph:
    """Bipartite rule/predicate DAG.

    Rule nodes are ``"R<i>"``, predicate nodes ``"P<k>"``.  Predicate nodes
    carry ``type`` (one of :data:`EDGE_TYPES`, or None before
    :func:`assign_operations`); every incident edge carries the same type.
    """

    graph: nx.DiGraph
    metadata: dict = field(default_factory=dict)

    @property
    def rules(self) -> list[str]:
        return sorted((n for n, d in self.graph.nodes(data=True) if d["kind"] == "rule"), key=node_index)

    @property
    def predicates(self) -> list[str]:
        return sorted((n for n, d in self.graph.nodes(data=True) if d["kind"] == "pred"), key=node_index)

    def ptype(self, pred: str) -> str | None:
        return self.graph.nodes[pred].get("type")

    def body(self, rule: str) -> list[str]:
        return sorted(self.graph.predecessors(rule), key=node_index)

    def heads(self, rule: str) -> list[str]:
        return sorted(self.graph.successors(rule), key=node_index)

    def input_predicates(self) -> list[str]:
        return [p for p in self.predicates if self.graph.in_degree(p) == 0]

    def terminal_predicates(self) -> list[str]:
        return [p for p in self.predicates if self.graph.out_degree(p) == 0]

    def inner_predicates(self) -> list[str]:
        return [p for p in self.predicates if self.graph.out_degree(p) > 0]

    def rule_order(self) -> list[str]:
        order = nx.lexicographical_topological_sort(self.graph, key=lambda n: (n[0], node_index(n)))
        return [n for n in order if n.startswith("R")]

    def to_json(self) -> dict:
        return {
            "nodes": [{"id": n, **self.graph.nodes[n]} for n in self.rules + self.predicates],
            "edges": [{"src": u, "dst": v, "type": d.get("type")}
                      for u, v, d in sorted(self.graph.edges(data=True), key=lambda e: (node_key(e[0]), node_key(e[1])))],
            "metadata": self.metadata,
        }


def node_index(name: str) -> int:
    return int(name[1:])


def node_key(name: str) -> tuple[str, int]:
    return (name[0], node_index(name))


def expand_to_rp_graph(rg: RuleGraph, params: GenParams) -> RPOGraph:
    """Insert predicates between rules, then add inputs, the output and extras."""
    cap = params.max_body_predicates
    rng = params.rng("rp_graph")
    g = nx.DiGraph()
    for i in range(rg.n_rules):
        g.add_node(f"R{i}", kind="rule")
    counter = 0

    def new_pred() -> str:
        nonlocal counter
        name = f"P{counter}"
        counter += 1
        g.add_node(name, kind="pred", type=None)
        return name

    for i, j in sorted(rg.edges):
        p = new_pred()
        g.add_edge(f"R{i}", p)
        g.add_edge(p, f"R{j}")
    g.add_edge("R0", new_pred())
    for i in range(rg.n_rules):
        r = f"R{i}"
        if g.in_degree(r) == 0:
            g.add_edge(new_pred(), r)

    rules = [f"R{i}" for i in range(rg.n_rules)]
    unplaced = 0
    for _ in range(params.extra_predicates):
        open_rules = [r for r in rules if g.in_degree(r) < cap]
        if not open_rules:
            unplaced += 1
            continue
        g.add_edge(new_pred(), rng.choice(open_rules))

    preds = [n for n in g.nodes if n.startswith("P")]
    cands = sorted(((p, r) for p in preds for r in rules if not g.has_edge(p, r) and not g.has_edge(r, p)),
                   key=lambda e: (node_index(e[0]), node_index(e[1])))
    rng.shuffle(cands)
    added = 0
    for p, r in cands:
        if added == params.extra_edges:
            break
        if g.in_degree(r) >= cap or nx.has_path(g, r, p):
            continue
        g.add_edge(p, r)
        added += 1

    meta = {
        "extra_predicates_unplaced": unplaced,
        "extra_edges_unfilled": params.extra_edges - added,
    }
    return RPOGraph(g, meta)


def _combine(sn: bool, dn: bool) -> str:
    return {(False, False): "P", (True, False): "SN", (False, True): "DN", (True, True): "SNDN"}[(sn, dn)]


def draw_type(rng: random.Random, p_sn: float, p_dn: float) -> str:
    sn = rng.random() < p_sn
    dn = rng.random() < p_dn
    return _combine(sn, dn)


def assign_operations(g: RPOGraph, params: GenParams) -> RPOGraph:
    """Draw a unified negation type per predicate node and stamp it on its edges."""
    rng = params.rng("operations")
    out = RPOGraph(g.graph.copy(), dict(g.metadata))
    for p in out.predicates:
        t = draw_type(rng, params.p_strong_neg, params.p_default_neg)
        out.graph.nodes[p]["type"] = t
        for u, v in list(out.graph.in_edges(p)) + list(out.graph.out_edges(p)):
            out.graph.edges[u, v]["type"] = t
    return out


def dedup_key(g: RPOGraph) -> str:
    """Relabeling-invariant fingerprint: one Weisfeiler-Lehman round over
    node kind, type and degrees, salted with the edge count."""
    h = nx.DiGraph()
    for n, d in g.graph.nodes(data=True):
        label = f"{d['kind']}:{d.get('type')}:{g.graph.in_degree(n)}:{g.graph.out_degree(n)}"
        h.add_node(n, label=label)
    h.add_edges_from(g.graph.edges())
    wl = nx.weisfeiler_lehman_graph_hash(h, node_attr="label", iterations=1)
    return hashlib.sha256(f"{wl}|{h.number_of_edges()}|{h.number_of_nodes()}".encode()).hexdigest()[:32]


def longest_rule_chain(g: RPOGraph) -> int:
    """Number of rule nodes on the longest dependency path."""
    return (nx.dag_longest_path_length(g.graph) + 1) // 2 if g.rules else 0


def generate_graph(params: GenParams) -> RPOGraph:
    rg = build_rule_graph(params)
    g = assign_operations(expand_to_rp_graph(rg, params), params)
    g.metadata.update(rule_edges=len(rg.edges), params=asdict(params), max_chain=longest_rule_chain(g))
    return g

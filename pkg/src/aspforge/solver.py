"""Reference stable-model engine.

Answer sets are computed on the naive grounding.  Before searching, the
ground program is cut down to the literals that are *possibly derivable*
(reachable from facts when every ``not`` is assumed to hold); no answer set
can leave that set, so its size is the budget checked against
``max_literals``.

Enumeration guesses which ``not``-literals are in the answer set, builds the
reduct for that guess and searches its minimal models by branching over
disjunctive heads.  A minimal model agreeing with the guess is an answer set.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import networkx as nx

from .core import AspError, Atom, Literal, Program, Rule, canonicalize, is_consistent, literal_key
from .grounder import GroundProgram, ground

DEFAULT_MAX_LITERALS = 18


class GroundSizeExceeded(AspError):
    def __init__(self, count: int, bound: int):
        self.count = count
        self.bound = bound
        super().__init__(f"{count} derivable ground literals exceed the bound of {bound}")


class InconsistentCandidate(AspError):
    pass


class NotSingleAnswerSet(AspError):
    def __init__(self, count: int):
        self.count = count
        super().__init__(f"expected exactly one answer set, found {count if count < 2 else 'at least 2'}")


class TruthState(str, Enum):
    TRUE = "True"
    FALSE = "False"
    UNKNOWN = "Unknown"


class Failure(str, Enum):
    NONE = "None"
    INCONSISTENT = "Inconsistent"
    NOT_MODEL_OF_REDUCT = "NotModelOfReduct"
    NOT_MINIMAL = "NotMinimal"


@dataclass(frozen=True)
class VerifyDiagnosis:
    verdict: bool
    failure: Failure
    witness: frozenset[Literal] | None = None
    detail: str = ""


@dataclass(frozen=True)
class ClassReport:
    positive: bool
    stratified: bool
    head_cycle_free: bool


# ---------------------------------------------------------------- reduct & models


def reduct(g: GroundProgram, s: Iterable[Literal]) -> GroundProgram:
    """Drop rules with some ``not a`` where a is in s, then erase remaining ``not``s."""
    s = frozenset(s)
    if not is_consistent(s):
        raise InconsistentCandidate(f"candidate contains complementary literals: {sorted(map(str, s))}")
    kept = []
    for r in g.rules:
        if any(b.naf and b.literal in s for b in r.body):
            continue
        kept.append(Rule(r.head, tuple(b for b in r.body if not b.naf)))
    return GroundProgram.from_rules(kept)


def _violated(rule: Rule, m: frozenset[Literal]) -> bool:
    body_true = all((b.literal not in m) if b.naf else (b.literal in m) for b in rule.body)
    return body_true and not any(h in m for h in rule.head)


def is_model(s: Iterable[Literal], g: GroundProgram) -> bool:
    s = frozenset(s)
    return not any(_violated(r, s) for r in g.rules)


class _Compiled:
    """Ground rules over integer literal ids."""

    def __init__(self, rules: Iterable[Rule], extra: Iterable[Literal] = ()):
        self.lits: list[Literal] = []
        self.index: dict[Literal, int] = {}
        self.rules: list[tuple[tuple[int, ...], frozenset[int], frozenset[int]]] = []
        for lit in extra:
            self.id(lit)
        for r in rules:
            heads = tuple(self.id(h) for h in r.head)
            pos = frozenset(self.id(b.literal) for b in r.body if not b.naf)
            naf = frozenset(self.id(b.literal) for b in r.body if b.naf)
            self.rules.append((heads, pos, naf))
        self.comp = [self.index.get(lit.complement(), -1) for lit in self.lits]

    def id(self, lit: Literal) -> int:
        i = self.index.get(lit)
        if i is None:
            i = self.index[lit] = len(self.lits)
            self.lits.append(lit)
        return i

    def derivable(self) -> set[int]:
        """Least fixpoint of rule application with every ``not`` taken as true."""
        d: set[int] = set()
        changed = True
        while changed:
            changed = False
            for heads, pos, _ in self.rules:
                if pos <= d and not all(h in d for h in heads):
                    d.update(heads)
                    changed = True
        return d

    def decode(self, m: Iterable[int]) -> frozenset[Literal]:
        return frozenset(self.lits[i] for i in m)


def _minimal_models(rules, comp, forbidden=frozenset(), universe=None) -> list[frozenset[int]]:
    """Minimal models of a ``not``-free program, skipping any model that is
    inconsistent, meets ``forbidden`` or leaves ``universe``.

    Skipping is safe: every superset of a skipped model would be skipped too,
    so the survivors that are minimal among survivors are minimal models.
    """
    leaves: set[frozenset[int]] = set()
    visited: set[frozenset[int]] = set()

    def allowed(h: int, m: set[int]) -> bool:
        if h in forbidden or (universe is not None and h not in universe):
            return False
        c = comp[h]
        return c < 0 or c not in m

    def search(m: set[int]) -> None:
        changed = True
        while changed:
            changed = False
            for heads, pos, _ in rules:
                if pos <= m and not any(h in m for h in heads):
                    cands = [h for h in heads if allowed(h, m)]
                    if not cands:
                        return
                    if len(cands) == 1:
                        m.add(cands[0])
                        changed = True
        key = frozenset(m)
        if key in visited:
            return
        visited.add(key)
        for heads, pos, _ in rules:
            if pos <= m and not any(h in m for h in heads):
                for h in heads:
                    if allowed(h, m):
                        search(m | {h})
                return
        leaves.add(key)

    search(set())
    return [m for m in leaves if not any(o < m for o in leaves)]


def _smaller_model(rules, comp, s: frozenset[int]) -> frozenset[int] | None:
    """A model of ``rules`` strictly inside s, if one exists (rules must be ``not``-free)."""
    relevant = [r for r in rules if r[1] <= s]
    best = None
    for m in _minimal_models(relevant, [-1] * len(comp), universe=s):
        if m != s and (best is None or len(m) < len(best)):
            best = m
    return best


def is_minimal_model(s: Iterable[Literal], g: GroundProgram) -> bool:
    if any(b.naf for r in g.rules for b in r.body):
        raise ValueError("minimality is defined for programs without default negation")
    s = frozenset(s)
    if not is_model(s, g):
        return False
    c = _Compiled(g.rules, extra=s)
    return _smaller_model(c.rules, c.comp, frozenset(c.index[x] for x in s)) is None


# ---------------------------------------------------------------- enumeration


def _prepare(program: Program | GroundProgram, max_literals: int | None) -> tuple[_Compiled, set[int]]:
    g = program if isinstance(program, GroundProgram) else ground(program)
    c = _Compiled(g.rules)
    d = c.derivable()
    if max_literals is not None and len(d) > max_literals:
        raise GroundSizeExceeded(len(d), max_literals)
    return c, d


def derivable_literals(program: Program | GroundProgram) -> list[Literal]:
    """Ground literals that can appear in some answer set (a superset)."""
    c, d = _prepare(program, None)
    return canonicalize(c.lits[i] for i in d)


def _closure(rules, seed=()) -> set[int]:
    out = set(seed)
    changed = True
    while changed:
        changed = False
        for heads, pos, _ in rules:
            if pos <= out and not all(h in out for h in heads):
                out.update(heads)
                changed = True
    return out


def _search(rules, comp, guessable: frozenset[int]) -> set[frozenset[int]]:
    """Branch over which ``not``-literals hold, pruning with two bounds.

    For assumptions (T in, F out) every answer set M agreeing with them lies
    between L (closure of the single-headed rules certainly in the reduct)
    and U (closure of all rules not yet blocked by T).
    """
    order = sorted(guessable)
    found: set[frozenset[int]] = set()

    def rec(t: frozenset[int], f: frozenset[int]) -> None:
        while True:
            live = [r for r in rules if not (r[2] & t)]
            upper = _closure(live)
            if not t <= upper:
                return
            lower = _closure([r for r in live if len(r[0]) == 1 and r[2] <= f])
            if lower & f or any(comp[x] in lower for x in lower):
                return
            if any(not h and p <= lower and n <= f for h, p, n in live):
                return
            new_t = (lower & guessable) - t
            new_f = (guessable - upper) - f
            if not new_t and not new_f:
                break
            t, f = t | new_t, f | new_f
        for x in order:
            if x not in t and x not in f:
                rec(t | {x}, f)
                rec(t, f | {x})
                return
        for m in _minimal_models(live, comp, forbidden=f):
            if t <= m:
                found.add(m)

    rec(frozenset(), frozenset())
    return found


def enumerate_answer_sets(
    program: Program | GroundProgram,
    limit: int | None = None,
    max_literals: int | None = DEFAULT_MAX_LITERALS,
) -> list[frozenset[Literal]]:
    """All answer sets in canonical order, truncated at ``limit``."""
    c, d = _prepare(program, max_literals)
    rules = []
    for heads, pos, naf in c.rules:
        if pos <= d:
            rules.append((heads, pos, naf & d))
    guessable = frozenset().union(*(r[2] for r in rules)) if rules else frozenset()
    found = _search(rules, c.comp, guessable)
    answer_sets = sorted((c.decode(m) for m in found), key=_set_key)
    return answer_sets if limit is None else answer_sets[:limit]


def _set_key(s: frozenset[Literal]) -> list:
    return [literal_key(x) for x in canonicalize(s)]


solve = enumerate_answer_sets


def verify(
    program: Program | GroundProgram,
    candidate: Iterable[Literal],
    max_literals: int | None = DEFAULT_MAX_LITERALS,
) -> VerifyDiagnosis:
    """Consistency check, then reduct model check, then minimality."""
    cand = frozenset(candidate)
    for lit in cand:
        if not lit.is_ground:
            raise ValueError(f"candidate literal is not ground: {lit}")
    g = program if isinstance(program, GroundProgram) else ground(program)
    _prepare(g, max_literals)
    for lit in canonicalize(cand):
        if lit.complement() in cand:
            return VerifyDiagnosis(False, Failure.INCONSISTENT, frozenset({lit, lit.complement()}),
                                   f"contains both {lit} and {lit.complement()}")
    red = reduct(g, cand)
    for r in red.rules:
        if _violated(r, cand):
            return VerifyDiagnosis(False, Failure.NOT_MODEL_OF_REDUCT, None, f"reduct rule not satisfied: {r}")
    c = _Compiled(red.rules, extra=cand)
    smaller = _smaller_model(c.rules, c.comp, frozenset(c.index[x] for x in cand))
    if smaller is not None:
        w = c.decode(smaller)
        return VerifyDiagnosis(False, Failure.NOT_MINIMAL, w, "a strictly smaller model of the reduct exists")
    return VerifyDiagnosis(True, Failure.NONE)


def entail(program: Program | GroundProgram, query: Atom, max_literals: int | None = DEFAULT_MAX_LITERALS) -> TruthState:
    if not query.is_ground:
        raise ValueError(f"query must be ground: {query}")
    sets = enumerate_answer_sets(program, limit=2, max_literals=max_literals)
    if len(sets) != 1:
        raise NotSingleAnswerSet(len(sets))
    (s,) = sets
    if Literal(query) in s:
        return TruthState.TRUE
    if Literal(query, True) in s:
        return TruthState.FALSE
    return TruthState.UNKNOWN


# ---------------------------------------------------------------- syntactic classes


def _pred_node(lit: Literal) -> tuple[str, int, bool]:
    return (lit.predicate, lit.atom.arity, lit.neg)


def dependency_graph(program: Program) -> nx.MultiDiGraph:
    """Literal-level predicate dependency graph; edges body -> head, ``naf`` flag set."""
    g = nx.MultiDiGraph()
    for r in program.all_rules():
        for h in r.head:
            g.add_node(_pred_node(h))
        for b in r.body:
            g.add_node(_pred_node(b.literal))
            for h in r.head:
                g.add_edge(_pred_node(b.literal), _pred_node(h), naf=b.naf)
    return g


def classify(program: Program) -> ClassReport:
    """Positive / stratified / head-cycle-free flags.

    ``p`` and ``-p`` are separate nodes.  Stratified: no cycle runs through a
    ``not`` edge.  Head-cycle-free: the graph of non-``not`` edges is acyclic.
    """
    rules = program.all_rules()
    positive = not any(
        lit.neg for r in rules for lit in list(r.head) + [b.literal for b in r.body]
    ) and not any(b.naf for r in rules for b in r.body)

    g = dependency_graph(program)
    component = {}
    for i, scc in enumerate(nx.strongly_connected_components(g)):
        for node in scc:
            component[node] = i
    stratified = not any(d["naf"] and component[u] == component[v] for u, v, d in g.edges(data=True))

    pos = nx.DiGraph()
    pos.add_nodes_from(g.nodes)
    pos.add_edges_from((u, v) for u, v, d in g.edges(data=True) if not d["naf"])
    hcf = nx.is_directed_acyclic_graph(pos)
    return ClassReport(positive, stratified, hcf)


"""Turn a typed ASP graph into safe rules.

Variables are assigned rule by rule in topological order; each predicate
keeps the arity it was first given.  Rules that fail the safety check are
repaired by negation flips on body literals, fewest flips first.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from enum import Enum

from .core import AspError, Atom, BodyLiteral, Literal, Rule, Term, negation_flip
from .graphgen import RPOGraph
from .grounder import safety_check

DEFAULT_MAX_ATTEMPTS = 64


class ArityRangeEmpty(AspError):
    pass


class Rejected(AspError):
    def __init__(self, rule: Rule, attempts: int):
        self.rule = rule
        self.attempts = attempts
        super().__init__(f"no safe negation-flip variant of {rule} within {attempts} attempts")


class HeadPolicy(str, Enum):
    SPLIT = "SplitRules"
    DISJUNCTION = "Disjunction"


@dataclass(frozen=True)
class PredicateSignature:
    node: str
    name: str
    arity: int
    template: tuple[str, ...]


@dataclass(frozen=True)
class RuleBinding:
    rule: str
    body: tuple[tuple[str, tuple[str, ...]], ...]
    head: tuple[tuple[str, tuple[str, ...]], ...]


def body_flags(ptype: str) -> tuple[bool, bool]:
    """(strong_neg, default_neg) of a body occurrence of a predicate of this type."""
    return ptype in ("SN", "SNDN"), ptype in ("DN", "SNDN")


def bind_rule(
    rng: random.Random,
    body: list[str],
    head: list[str],
    arity: dict[str, int],
    types: dict[str, str],
    max_vars: int,
) -> tuple[list[tuple[str, tuple[str, ...]]], list[tuple[str, tuple[str, ...]]]]:
    """Choose argument variables for one rule.

    Non-``not`` body atoms are filled first and each later atom reuses at
    least one variable already placed.  ``not`` atoms draw from the variables
    of non-``not`` atoms when there are any; heads draw from the body.
    """
    pool = [f"V{i}" for i in range(max_vars)]
    order = list(body)
    rng.shuffle(order)
    order.sort(key=lambda p: body_flags(types[p])[1])
    used: list[str] = []
    positive_vars: list[str] = []
    bound: dict[str, tuple[str, ...]] = {}
    for p in order:
        k = arity[p]
        naf = body_flags(types[p])[1]
        source = positive_vars if (naf and positive_vars) else pool
        args = [rng.choice(source) for _ in range(k)]
        if k and used and not set(args) & set(used):
            args[rng.randrange(k)] = rng.choice(used)
        bound[p] = tuple(args)
        for v in args:
            if v not in used:
                used.append(v)
            if not naf and v not in positive_vars:
                positive_vars.append(v)
    heads = []
    for p in head:
        k = arity[p]
        if k and not used:
            raise ValueError(f"head predicate {p} has arity {k} but the body has no variables")
        heads.append((p, tuple(rng.choice(used) for _ in range(k))))
    return [(p, bound[p]) for p in body], heads


def assign_variables(
    g: RPOGraph,
    arity_range: tuple[int, int] = (0, 3),
    seed: int | str = 0,
    max_vars: int = 3,
) -> tuple[dict[str, PredicateSignature], dict[str, RuleBinding]]:
    lo, hi = arity_range
    if lo > hi or lo < 0:
        raise ArityRangeEmpty(f"empty arity range [{lo}, {hi}]")
    if max_vars < 1:
        raise ValueError("max_vars must be at least 1")
    rng = random.Random(f"{seed}/variables")
    types = {p: g.ptype(p) for p in g.predicates}
    arity: dict[str, int] = {}
    templates: dict[str, tuple[str, ...]] = {}
    bindings: dict[str, RuleBinding] = {}
    for r in g.rule_order():
        body, head = g.body(r), g.heads(r)
        for p in body:
            if p not in arity:
                arity[p] = rng.randint(lo, hi)
        has_vars = any(arity[p] for p in body)
        for p in head:
            if p not in arity:
                arity[p] = rng.randint(lo, hi) if has_vars else 0
        b, h = bind_rule(rng, body, head, arity, types, max_vars)
        for p, args in b + h:
            templates.setdefault(p, args)
        bindings[r] = RuleBinding(r, tuple(b), tuple(h))
    for p in g.predicates:
        if p not in arity:
            arity[p] = rng.randint(lo, hi)
            templates[p] = tuple(f"V{i % max_vars}" for i in range(arity[p]))
    sigs = {p: PredicateSignature(p, p, arity[p], templates[p]) for p in g.predicates}
    return sigs, bindings


def make_atom(name: str, args: tuple[str, ...]) -> Atom:
    return Atom(name, tuple(Term.var(v) for v in args))


def body_literal(name: str, args: tuple[str, ...], ptype: str) -> BodyLiteral:
    sn, dn = body_flags(ptype)
    return BodyLiteral(Literal(make_atom(name, args), sn), dn)


def head_literal(name: str, args: tuple[str, ...], ptype: str) -> Literal:
    return Literal(make_atom(name, args), ptype in ("SN", "SNDN"))


def emit_rules(
    g: RPOGraph,
    sigs: dict[str, PredicateSignature],
    bindings: dict[str, RuleBinding],
    policy: HeadPolicy = HeadPolicy.SPLIT,
) -> list[Rule]:
    """Unrepaired rules, in topological rule order."""
    out: list[Rule] = []
    for r in g.rule_order():
        bnd = bindings[r]
        body = tuple(body_literal(sigs[p].name, args, g.ptype(p)) for p, args in bnd.body)
        heads = [head_literal(sigs[p].name, args, g.ptype(p)) for p, args in bnd.head]
        if policy is HeadPolicy.DISJUNCTION or len(heads) <= 1:
            out.append(Rule(tuple(heads), body))
        else:
            out.extend(Rule((h,), body) for h in heads)
    return out


def is_valid(rule: Rule) -> bool:
    return not safety_check(rule)


def repair(rule: Rule, max_attempts: int = DEFAULT_MAX_ATTEMPTS) -> Rule:
    """Smallest set of body negation flips that makes ``rule`` safe.

    Candidates are tried by increasing flip count, subsets in index order.
    """
    attempts = 0
    n = len(rule.body)
    for k in range(n + 1):
        for idx in itertools.combinations(range(n), k):
            if attempts >= max_attempts:
                raise Rejected(rule, attempts)
            attempts += 1
            body = tuple(negation_flip(b) if i in idx else b for i, b in enumerate(rule.body))
            cand = Rule(rule.head, body)
            if is_valid(cand):
                return cand
    raise Rejected(rule, attempts)


def flip_distance(a: Rule, b: Rule) -> int:
    return sum(x != y for x, y in zip(a.body, b.body))


@dataclass
class RuleSet:
    signatures: dict[str, PredicateSignature]
    bindings: dict[str, RuleBinding]
    rules: list[Rule]
    repaired: int
    rejected: int


def generate_rules(
    g: RPOGraph,
    policy: HeadPolicy,
    seed: int | str,
    arity_range: tuple[int, int] = (0, 3),
    max_vars: int = 3,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> RuleSet:
    sigs, bindings = assign_variables(g, arity_range, seed, max_vars)
    rules, repaired, rejected = [], 0, 0
    for r in emit_rules(g, sigs, bindings, policy):
        try:
            fixed = repair(r, max_attempts)
        except Rejected:
            rejected += 1
            continue
        repaired += fixed != r
        rules.append(fixed)
    return RuleSet(sigs, bindings, rules, repaired, rejected)

"""Independent reference implementations used as test oracles.

Nothing here calls the package's grounder, solver or evaluator; only the
plain data types are shared.
"""

from __future__ import annotations

import itertools
import random
import re

from aspforge.core import Atom, BodyLiteral, Literal, Program, Rule, Term


# ---------------------------------------------------------------- brute-force answer sets


def naive_ground(program: Program) -> list[Rule]:
    consts = sorted({t.name for r in program.all_rules() for a in r.atoms() for t in a.args if not t.variable})
    out = []
    for r in program.all_rules():
        vs = sorted({t.name for a in r.atoms() for t in a.args if t.variable})
        for combo in itertools.product(consts, repeat=len(vs)):
            sub = dict(zip(vs, combo))

            def inst(lit: Literal) -> Literal:
                args = tuple(Term.const(sub[t.name]) if t.variable else t for t in lit.atom.args)
                return Literal(Atom(lit.atom.predicate, args), lit.neg)

            out.append(Rule(tuple(inst(h) for h in r.head),
                            tuple(BodyLiteral(inst(b.literal), b.naf) for b in r.body)))
    return out


def head_universe(rules: list[Rule]) -> list[Literal]:
    seen = {}
    for r in rules:
        for h in r.head:
            seen.setdefault(h, None)
    return list(seen)


def brute_force_answer_sets(program: Program) -> set[frozenset[Literal]]:
    """Try every consistent {absent, positive, negative} assignment to the
    atoms occurring in heads; keep those that are minimal models of their
    own reduct."""
    rules = naive_ground(program)
    lits = head_universe(rules)
    idx = {x: i for i, x in enumerate(lits)}
    # literals that never occur in a head are false in every candidate
    compiled = []
    for r in rules:
        head = sum(1 << idx[h] for h in r.head)
        pos, naf, dead = 0, 0, False
        for b in r.body:
            if b.literal in idx:
                if b.naf:
                    naf |= 1 << idx[b.literal]
                else:
                    pos |= 1 << idx[b.literal]
            elif not b.naf:
                dead = True
        if not dead:
            compiled.append((head, pos, naf))
    atoms = sorted({x.atom for x in lits}, key=str)
    options = []
    for a in atoms:
        opts = [0]
        for neg in (False, True):
            lit = Literal(a, neg)
            if lit in idx:
                opts.append(1 << idx[lit])
        options.append(opts)
    found = set()
    for choice in itertools.product(*options):
        s = sum(choice)
        red = [(h, p) for h, p, n in compiled if not n & s]
        if not _models(red, s):
            continue
        sub = (s - 1) & s
        minimal = True
        while True:
            if sub != s and _models(red, sub):
                minimal = False
                break
            if sub == 0:
                break
            sub = (sub - 1) & s
        if minimal:
            found.add(frozenset(lits[i] for i in range(len(lits)) if s >> i & 1))
    return found


def _models(red, m: int) -> bool:
    for h, p in red:
        if p & ~m == 0 and not h & m:
            return False
    return True


def least_fixpoint(program: Program) -> frozenset[Literal]:
    """Naive iteration for programs without ``not``, disjunction or constraints."""
    rules = naive_ground(program)
    m: set[Literal] = set()
    changed = True
    while changed:
        changed = False
        for r in rules:
            if all(b.literal in m for b in r.body) and r.head[0] not in m:
                m.add(r.head[0])
                changed = True
    return frozenset(m)


# ---------------------------------------------------------------- random programs


def random_program(rng: random.Random, max_head_literals: int = 12) -> Program:
    """A small random safe program; resampled until its ground head universe is bounded."""
    while True:
        p = _draw_program(rng)
        has_vars = any(t.variable for r in p.all_rules() for a in r.atoms() for t in a.args)
        has_consts = any(not t.variable for r in p.all_rules() for a in r.atoms() for t in a.args)
        if has_vars and not has_consts:
            continue
        if len(head_universe(naive_ground(p))) <= max_head_literals:
            return p


def _draw_program(rng: random.Random) -> Program:
    names = "abcdefgh"[: rng.randint(3, 8)]
    preds = {n: rng.choice((0, 0, 1)) for n in names}
    consts = ["x", "y", "z"][: rng.randint(1, 3)]

    def lit(name: str, var: str | None) -> Literal:
        k = preds[name]
        args = () if k == 0 else ((Term.var(var),) if var else (Term.const(rng.choice(consts)),))
        return Literal(Atom(name, args), rng.random() < 0.25)

    rules = []
    for name in names:
        if rng.random() < 0.4:
            rules.append(Rule((lit(name, None),)))
    anchor = [n for n, k in preds.items() if k == 1]
    for _ in range(rng.randint(1, 10)):
        var = "X" if anchor and rng.random() < 0.5 else None
        body = [BodyLiteral(lit(rng.choice(names), None), rng.random() < 0.4) for _ in range(rng.randint(0, 3))]
        if var:
            body.append(BodyLiteral(lit(rng.choice(anchor), "X"), False))
        nhead = rng.choice((0, 1, 1, 1, 2, 2, 3)) if body else rng.choice((1, 2))
        head = tuple(dict.fromkeys(lit(rng.choice(names), var) for _ in range(nhead)))
        rules.append(Rule(head, tuple(body)))
    return Program.from_rules(rules)


# ---------------------------------------------------------------- metric oracles


def confusion_macro_f1(pairs: list[tuple[str, str]], classes: list[str]) -> float:
    """Macro-F1 via 2TP / (2TP + FP + FN) per class, computed from a confusion matrix."""
    labels = sorted({p for _, p in pairs} | set(classes))
    cm = {(g, p): 0 for g in labels for p in labels}
    for g, p in pairs:
        cm[(g, p)] += 1
    total = 0.0
    for c in classes:
        tp = cm[(c, c)]
        fp = sum(cm[(g, c)] for g in labels if g != c)
        fn = sum(cm[(c, p)] for p in labels if p != c)
        denom = 2 * tp + fp + fn
        total += 2 * tp / denom if denom else 0.0
    return total / len(classes)


_SPLIT = re.compile(r",(?![^()]*\))")


def _norm_lits(items) -> frozenset[str]:
    if isinstance(items, str):
        items = [x for x in _SPLIT.split(items.strip().strip("{}")) if x.strip()]
    return frozenset(re.sub(r"\s+", "", x) for x in items)


def exact_match(gold_sets: list, pred_sets: list) -> bool:
    golds = {_norm_lits(s) for s in gold_sets}
    return any(_norm_lits(p) in golds for p in pred_sets)

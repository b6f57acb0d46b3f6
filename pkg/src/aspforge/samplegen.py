"""Benchmark samples: facts, augmentation, restyling, labelling, batches.

Each sample is a pure function of (config, master seed, task, index,
attempt).  A sample that cannot be certified (no or too many answer sets,
ground size over the bound, unreachable label) is regenerated from the next
sub-seed, up to ``resample_budget`` times.
"""

from __future__ import annotations

import csv
import hashlib
import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from enum import Enum
from importlib import resources
from pathlib import Path

from .core import AspError, Atom, BodyLiteral, Literal, Program, Rule, Term, canonicalize, negation_flip
from .graphgen import GenParams, RPOGraph, draw_type, dedup_key, edge_range, generate_graph
from .parser import print_program, program_to_dict
from .rulegen import (
    HeadPolicy,
    PredicateSignature,
    Rejected,
    bind_rule,
    body_literal,
    generate_rules,
    head_literal,
    repair,
)
from .solver import (
    GroundSizeExceeded,
    classify,
    derivable_literals,
    enumerate_answer_sets,
    verify,
)
from .textualizer import textualize_program

TASKS = ("ASE", "ASV", "ASC")
STYLES = ("PStyle", "RelatedConcepts", "RandomConcepts")
ASE_LABELS = ("True", "False", "Unknown")
ASV_LABELS = ("Yes", "No")


class PerturbationKind(str, Enum):
    FLIP_NEGATION = "FlipNegation"
    DELETE_FACT = "DeleteFact"
    ADD_MODIFIED_FACT_CONSTANTS = "AddModifiedFactConstants"
    ADD_MODIFIED_FACT_PREDICATE = "AddModifiedFactPredicate"

    @property
    def short(self) -> str:
        return PERTURBATION_SHORT[self]


PERTURBATION_SHORT = {
    PerturbationKind.FLIP_NEGATION: "FN",
    PerturbationKind.DELETE_FACT: "DF",
    PerturbationKind.ADD_MODIFIED_FACT_CONSTANTS: "AMFC",
    PerturbationKind.ADD_MODIFIED_FACT_PREDICATE: "AMFP",
}


class AugmentationOverflow(AspError):
    pass


class LexiconTooSmall(AspError):
    pass


class ResampleBudgetExhausted(AspError):
    pass


class Resample(AspError):
    """Internal: this draw cannot yield a certified sample."""


@dataclass(frozen=True)
class SampleConfig:
    n_rules: tuple[int, int] = (2, 4)
    surplus_rule_edges: tuple[int, int] = (0, 2)
    extra_predicates: tuple[int, int] = (0, 1)
    extra_edges: tuple[int, int] = (0, 2)
    max_body_predicates: int = 3
    p_strong_neg: float = 0.3
    p_default_neg: float = 0.3
    arity: tuple[int, int] = (0, 3)
    max_vars: int = 3
    augment_rules: tuple[int, int] = (0, 2)
    new_predicates: int = 2
    styles: tuple[str, ...] = STYLES
    lexicon: str | None = None
    names: str | None = None
    max_literals: int = 18
    repair_attempts: int = 64
    resample_budget: int = 300
    min_answer_sets: int = 1
    dedup: bool = True
    dedup_budget: int = 25

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, list):
                object.__setattr__(self, f.name, tuple(v))
        for name in ("n_rules", "surplus_rule_edges", "extra_predicates", "extra_edges", "arity", "augment_rules"):
            lo, hi = getattr(self, name)
            if lo > hi or lo < 0:
                raise ValueError(f"{name}: empty range [{lo}, {hi}]")
        if self.n_rules[0] < 1:
            raise ValueError("n_rules must be at least 1")
        unknown = set(self.styles) - set(STYLES)
        if unknown or not self.styles:
            raise ValueError(f"styles must be a nonempty subset of {STYLES}")

    @classmethod
    def from_dict(cls, d: dict) -> SampleConfig:
        names = {f.name for f in fields(cls)}
        bad = sorted(set(d) - names)
        if bad:
            raise ValueError(f"unknown config keys: {', '.join(bad)}")
        return cls(**d)

    def to_dict(self) -> dict:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self).items()}


@dataclass
class SampleRecord:
    id: str
    task: str
    program_symbolic: dict
    program_textual: list[str]
    query: str | None
    candidate: list[str] | None
    label: str | None
    answer_sets: list[list[str]]
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, d: dict) -> SampleRecord:
        return cls(**{f.name: d.get(f.name) for f in fields(cls)})


# ---------------------------------------------------------------- resources


def _read_text(path: str | None, bundled: str) -> str:
    if path is not None:
        return Path(path).read_text(encoding="utf-8")
    return resources.files("aspforge").joinpath("data").joinpath(bundled).read_text(encoding="utf-8")


def load_lexicon(path: str | None = None) -> list[tuple[str, str, str]]:
    """(head, relation, tail) rows of a tab-separated triple file."""
    rows = []
    for row in csv.reader(_read_text(path, "lexicon.tsv").splitlines(), delimiter="\t"):
        if not row or row[0].startswith("#"):
            continue
        if len(row) != 3:
            raise ValueError(f"lexicon rows need 3 tab-separated fields, got {row!r}")
        rows.append((row[0].strip(), row[1].strip(), row[2].strip()))
    return rows


def load_names(path: str | None = None) -> list[str]:
    names = [ln.strip() for ln in _read_text(path, "names.txt").splitlines()]
    return list(dict.fromkeys(n for n in names if n))


def sample_seed(master: int, task: str, index: int, attempt: int, sub: int = 0) -> int:
    digest = hashlib.sha256(f"{master}|{task}|{index}|{attempt}|{sub}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


# ---------------------------------------------------------------- program formulation


def _fact_for(name: str, args: tuple[str, ...], ptype: str) -> Rule:
    b = body_literal(name, args, ptype)
    if b.naf:
        b = negation_flip(b)
    return Rule((b.literal,), ())


def ground_template(args: tuple[str, ...], pool: list[str]) -> tuple[str, ...]:
    """Map template variable ``V<i>`` to ``pool[i]``."""
    return tuple(pool[int(v[1:]) % len(pool)] for v in args)


def formulate_facts(g: RPOGraph, sigs: dict[str, PredicateSignature], pool: list[str]) -> list[Rule]:
    """One fact per input predicate; ``not`` types are negation-flipped first."""
    facts = []
    for p in g.input_predicates():
        s = sigs[p]
        facts.append(_ground_fact(_fact_for(s.name, s.template, g.ptype(p)), pool))
    return facts


def _ground_fact(r: Rule, pool: list[str]) -> Rule:
    (h,) = r.head
    args = ground_template(tuple(t.name for t in h.atom.args), pool)
    return Rule((Literal(Atom(h.predicate, tuple(Term.const(c) for c in args)), h.neg),), ())


@dataclass
class Augmentation:
    program: Program
    signatures: dict[str, PredicateSignature]
    types: dict[str, str]
    kinds: list[str]


AUG_KINDS = ("a", "b", "c", "d", "e")


def _pick_roles(kind: str, rng: random.Random, pt: list[str], po: list[str], pn: list[str], nbody: int):
    """(head, body) predicate lists for one augmentation rule, or None."""
    def take(pool: list[str], k: int, exclude=()) -> list[str] | None:
        pool = [p for p in pool if p not in exclude]
        return rng.sample(pool, k) if len(pool) >= k else None

    if kind == "a":
        head, body = take(pt, 1), take(po, nbody)
    elif kind == "b":
        first = take(pt, 1)
        rest = take(po, nbody - 1) if first else None
        body = first + rest if first is not None and rest is not None else None
        head = take(po, 1, exclude=body or ())
    elif kind == "c":
        body = take(po, nbody)
        head = take(po, 1, exclude=body or ())
    elif kind == "d":
        if not pn or not po:
            return None
        everything = rng.sample(pn + po, min(len(pn + po), nbody + 1))
        if not set(everything) & set(pn):
            everything[0] = rng.choice(pn)
        if not set(everything) & set(po):
            everything[-1] = rng.choice(po)
        if len(set(everything)) < 2:
            return None
        head, body = everything[:1], everything[1:]
    else:
        body = take(pn, nbody)
        head = take(pn, 1, exclude=body or ())
    if not head or not body:
        return None
    return head, body


def augment(
    program: Program,
    g: RPOGraph,
    sigs: dict[str, PredicateSignature],
    config: SampleConfig,
    seed: int | str,
    pool: list[str],
) -> Augmentation:
    """Add extra rules of kinds (a)-(e) and facts for any new predicates.

    P_t are predicates without outgoing edges, P_o those with, P_n fresh ones.
    """
    rng = random.Random(f"{seed}/augment")
    n_rules = rng.randint(*config.augment_rules)
    types = {p: g.ptype(p) for p in g.predicates}
    sigs = dict(sigs)
    if n_rules == 0:
        return Augmentation(program, sigs, types, [])
    pt, po = g.terminal_predicates(), g.inner_predicates()
    pn: list[str] = []
    facts = list(program.facts)
    next_id = max(int(p[1:]) for p in g.predicates) + 1
    for _ in range(config.new_predicates):
        name = f"P{next_id}"
        next_id += 1
        k = rng.randint(*config.arity)
        template = tuple(f"V{rng.randrange(config.max_vars)}" for _ in range(k))
        sigs[name] = PredicateSignature(name, name, k, template)
        types[name] = draw_type(rng, config.p_strong_neg, config.p_default_neg)
        facts.append(_ground_fact(_fact_for(name, template, types[name]), pool))
        pn.append(name)

    arity = {p: s.arity for p, s in sigs.items()}
    rules = list(program.rules)
    kinds = []
    for _ in range(n_rules):
        kind = rng.choice([k for k in AUG_KINDS if pn or k not in ("d", "e")])
        nbody = rng.randint(1, min(2, config.max_body_predicates))
        roles = _pick_roles(kind, rng, pt, po, pn, nbody)
        if roles is None:
            continue
        head, body = roles
        try:
            b, h = bind_rule(rng, body, head, arity, types, config.max_vars)
        except ValueError:
            continue
        rule = Rule(
            tuple(head_literal(sigs[p].name, a, types[p]) for p, a in h),
            tuple(body_literal(sigs[p].name, a, types[p]) for p, a in b),
        )
        try:
            rules.append(repair(rule, config.repair_attempts))
        except Rejected:
            continue
        kinds.append(kind)
    out = Program(tuple(dict.fromkeys(facts)), tuple(dict.fromkeys(rules)))
    count = len(derivable_literals(out))
    if count > config.max_literals:
        raise AugmentationOverflow(f"augmented program has {count} derivable literals (bound {config.max_literals})")
    return Augmentation(out, sigs, types, kinds)


# ---------------------------------------------------------------- restyling


def _rule_pairs(program: Program) -> list[tuple[str, str]]:
    pairs = []
    for r in program.rules:
        for b in r.body:
            for h in r.head:
                if b.literal.predicate != h.predicate:
                    pairs.append((b.literal.predicate, h.predicate))
    return list(dict.fromkeys(pairs))


def _predicates(program: Program) -> list[str]:
    return sorted({a.predicate for r in program.all_rules() for a in r.atoms()})


def rename_program(program: Program, preds: dict[str, str], consts: dict[str, str]) -> Program:
    def lit(x: Literal) -> Literal:
        args = tuple(t if t.variable else Term.const(consts.get(t.name, t.name)) for t in x.atom.args)
        return Literal(Atom(preds.get(x.predicate, x.predicate), args), x.neg)

    def rule(r: Rule) -> Rule:
        return Rule(tuple(lit(h) for h in r.head), tuple(BodyLiteral(lit(b.literal), b.naf) for b in r.body))

    return Program(tuple(rule(f) for f in program.facts), tuple(rule(r) for r in program.rules))


def rename_literal(x: Literal, name_map: dict) -> Literal:
    preds, consts = name_map["predicates"], name_map["constants"]
    args = tuple(t if t.variable else Term.const(consts.get(t.name, t.name)) for t in x.atom.args)
    return Literal(Atom(preds.get(x.predicate, x.predicate), args), x.neg)


def _related_names(preds: list[str], pairs: list[tuple[str, str]], lexicon, rng: random.Random) -> tuple[dict, int]:
    by_head: dict[str, list[str]] = {}
    by_tail: dict[str, list[str]] = {}
    for h, _, t in lexicon:
        if h != t:
            by_head.setdefault(h, []).append(t)
            by_tail.setdefault(t, []).append(h)
    names: dict[str, str] = {}
    used: set[str] = set()
    related = 0
    order = list(pairs)
    rng.shuffle(order)
    for b, h in order:
        if b in names and h in names:
            continue
        if b in names:
            opts = sorted(set(by_head.get(names[b], [])) - used)
            if opts:
                names[h] = rng.choice(opts)
        elif h in names:
            opts = sorted(set(by_tail.get(names[h], [])) - used)
            if opts:
                names[b] = rng.choice(opts)
        else:
            opts = sorted({(x, y) for x, _, y in lexicon if x != y and x not in used and y not in used})
            if opts:
                names[b], names[h] = rng.choice(opts)
        if b in names and h in names:
            related += 1
        used.update(names.values())
    rest = [p for p in preds if p not in names]
    pool = sorted({c for x, _, y in lexicon for c in (x, y)} - used)
    if len(pool) < len(rest):
        raise LexiconTooSmall(f"lexicon has {len(pool) + len(used)} concepts for {len(preds)} predicates")
    for p, c in zip(rest, rng.sample(pool, len(rest))):
        names[p] = c
    return names, related


def restyle(
    program: Program,
    style: str,
    seed: int | str,
    lexicon: list[tuple[str, str, str]] | None = None,
    names: list[str] | None = None,
) -> tuple[Program, dict]:
    """Bijectively rename predicates (per ``style``) and constants (from ``names``)."""
    rng = random.Random(f"{seed}/restyle")
    preds = _predicates(program)
    related = 0
    if style == "PStyle":
        ids = list(range(len(preds)))
        rng.shuffle(ids)
        pmap = {p: f"P{i}" for p, i in zip(preds, ids)}
    elif style in ("RelatedConcepts", "RandomConcepts"):
        if lexicon is None:
            lexicon = load_lexicon()
        if style == "RelatedConcepts":
            pmap, related = _related_names(preds, _rule_pairs(program), lexicon, rng)
        else:
            concepts = sorted({c for x, _, y in lexicon for c in (x, y)})
            if len(concepts) < len(preds):
                raise LexiconTooSmall(f"lexicon has {len(concepts)} concepts for {len(preds)} predicates")
            pmap = dict(zip(preds, rng.sample(concepts, len(preds))))
    else:
        raise ValueError(f"unknown predicate style {style!r}")
    consts = program.constants()
    if names is None:
        names = load_names()
    if len(names) < len(consts):
        raise LexiconTooSmall(f"name list has {len(names)} entries for {len(consts)} constants")
    cmap = dict(zip(consts, rng.sample(names, len(consts))))
    return rename_program(program, pmap, cmap), {"predicates": pmap, "constants": cmap, "related_pairs": related}


# ---------------------------------------------------------------- building one program


@dataclass
class Built:
    program: Program
    graph: RPOGraph
    style: str
    name_map: dict
    terminal: str
    counts: dict


def draw_params(config: SampleConfig, seed: int) -> GenParams:
    rng = random.Random(f"{seed}/params")
    n = rng.randint(*config.n_rules)
    low, high = edge_range(n, config.max_body_predicates)
    edges = min(high, low + rng.randint(*config.surplus_rule_edges))
    return GenParams(
        n_rules=n,
        target_edges=edges,
        extra_predicates=rng.randint(*config.extra_predicates),
        extra_edges=rng.randint(*config.extra_edges),
        max_body_predicates=config.max_body_predicates,
        p_strong_neg=config.p_strong_neg,
        p_default_neg=config.p_default_neg,
        seed=seed,
    )


def build_program(config: SampleConfig, policy: HeadPolicy, seed: int) -> Built:
    params = draw_params(config, seed)
    g = generate_graph(params)
    rs = generate_rules(g, policy, seed, config.arity, config.max_vars, config.repair_attempts)
    pool = [f"c{i}" for i in range(config.max_vars)]
    facts = formulate_facts(g, rs.signatures, pool)
    base = Program(tuple(dict.fromkeys(facts)), tuple(dict.fromkeys(rs.rules)))
    aug = augment(base, g, rs.signatures, config, seed, pool)
    style = random.Random(f"{seed}/style").choice(list(config.styles))
    lexicon = load_lexicon(config.lexicon) if style != "PStyle" else None
    program, name_map = restyle(aug.program, style, seed, lexicon, load_names(config.names))
    (out,) = g.heads("R0")
    counts = {
        "base_rules": len(rs.rules),
        "augmented_rules": len(aug.kinds),
        "augmentation_kinds": aug.kinds,
        "repaired_rules": rs.repaired,
        "rejected_rules": rs.rejected,
    }
    return Built(program, g, style, name_map, name_map["predicates"].get(rs.signatures[out].name), counts)


# ---------------------------------------------------------------- records


def _lits(s) -> list[str]:
    return [str(x) for x in canonicalize(s)]


def _record(task: str, built: Built, seed: int, answer_sets, **extra) -> SampleRecord:
    p = built.program
    arities = sorted({a.arity for r in p.all_rules() for a in r.atoms()})
    meta = {
        "seed": seed,
        "predicate_style": built.style,
        "classes": asdict(classify(p)),
        "perturbation": extra.pop("perturbation", None),
        "counts": {
            "facts": len(p.facts),
            "rules": len(p.rules),
            "predicates": len(_predicates(p)),
            "constants": len(p.constants()),
            "answer_sets": len(answer_sets),
            **built.counts,
        },
        "arity_range": [arities[0], arities[-1]] if arities else [0, 0],
        "graph_key": dedup_key(built.graph),
        "max_chain": built.graph.metadata["max_chain"],
        "graph": built.graph.metadata,
    }
    return SampleRecord(
        id="",
        task=task,
        program_symbolic={"lp": print_program(p), **program_to_dict(p)},
        program_textual=textualize_program(p),
        query=extra.get("query"),
        candidate=extra.get("candidate"),
        label=extra.get("label"),
        answer_sets=[_lits(s) for s in answer_sets],
        metadata=meta,
    )


def _terminal_query(built: Built, rng: random.Random, answer_set, target: str) -> tuple[str, str]:
    p = built.program
    name = built.terminal
    arity = p.signature.get(name)
    if arity is None:
        raise Resample("terminal predicate vanished")
    consts = p.constants()
    options: dict[str, list[Atom]] = {lab: [] for lab in ASE_LABELS}
    for combo in itertools.product(consts, repeat=arity):
        a = Atom(name, tuple(Term.const(c) for c in combo))
        if Literal(a) in answer_set:
            options["True"].append(a)
        elif Literal(a, True) in answer_set:
            options["False"].append(a)
        else:
            options["Unknown"].append(a)
    if not options[target]:
        raise Resample(f"label {target} unreachable")
    return str(rng.choice(options[target])), target


def make_ase_sample(config: SampleConfig, seed: int, target_label: str | None = None) -> SampleRecord:
    """Single-answer-set, disjunction-free program with a query on the terminal predicate."""
    rng = random.Random(f"{seed}/task")
    target = target_label or rng.choice(ASE_LABELS)
    if target not in ASE_LABELS:
        raise ValueError(f"ASE label must be one of {ASE_LABELS}")
    built = build_program(config, HeadPolicy.SPLIT, seed)
    if any(r.is_disjunctive for r in built.program.rules):
        raise Resample("disjunction in an ASE program")
    sets = enumerate_answer_sets(built.program, limit=2, max_literals=config.max_literals)
    if len(sets) != 1:
        raise Resample(f"{len(sets)} answer sets")
    query, label = _terminal_query(built, rng, sets[0], target)
    return _record("ASE", built, seed, sets, query=query, label=label)


def perturbations(s: frozenset[Literal], kind: PerturbationKind, program: Program):
    """Every single-step modification of ``s`` of the given kind, in a fixed order."""
    lits = canonicalize(s)
    if kind is PerturbationKind.FLIP_NEGATION:
        for x in lits:
            yield x, x.complement(), (s - {x}) | {x.complement()}
    elif kind is PerturbationKind.DELETE_FACT:
        for x in lits:
            yield x, None, s - {x}
    elif kind is PerturbationKind.ADD_MODIFIED_FACT_CONSTANTS:
        consts = program.constants()
        for x in lits:
            for i, t in enumerate(x.atom.args):
                for c in consts:
                    if c == t.name:
                        continue
                    args = x.atom.args[:i] + (Term.const(c),) + x.atom.args[i + 1:]
                    new = Literal(Atom(x.predicate, args), x.neg)
                    if new not in s:
                        yield x, new, s | {new}
    else:
        sig = program.signature
        for x in lits:
            for q in sorted(sig):
                if q != x.predicate and sig[q] == x.atom.arity:
                    new = Literal(Atom(q, x.atom.args), x.neg)
                    if new not in s:
                        yield x, new, s | {new}


def perturb(program: Program, s: frozenset[Literal], rng: random.Random, max_literals: int | None):
    """Pick a kind, then a modification of that kind that is certified not an answer set."""
    kinds = list(PerturbationKind)
    rng.shuffle(kinds)
    for kind in kinds:
        cands = list(perturbations(s, kind, program))
        rng.shuffle(cands)
        for target, repl, cand in cands:
            if not verify(program, cand, max_literals=max_literals).verdict:
                info = {"kind": kind.value, "short": kind.short, "target": str(target),
                        "replacement": None if repl is None else str(repl)}
                return cand, info
    raise Resample("no perturbation breaks the answer set")


def make_asv_sample(config: SampleConfig, seed: int, target_label: str | None = None) -> SampleRecord:
    rng = random.Random(f"{seed}/task")
    target = target_label or rng.choice(ASV_LABELS)
    built = build_program(config, HeadPolicy.DISJUNCTION, seed)
    sets = enumerate_answer_sets(built.program, max_literals=config.max_literals)
    if not sets:
        raise Resample("no answer set")
    chosen = rng.choice(sets)
    info = None
    if target == "Yes":
        cand = chosen
    else:
        cand, info = perturb(built.program, chosen, rng, config.max_literals)
    verdict = verify(built.program, cand, max_literals=config.max_literals).verdict
    label = "Yes" if verdict else "No"
    if label != target:
        raise Resample("candidate failed certification")
    return _record("ASV", built, seed, sets, candidate=_lits(cand), label=label, perturbation=info)


def make_asc_sample(config: SampleConfig, seed: int) -> SampleRecord:
    built = build_program(config, HeadPolicy.DISJUNCTION, seed)
    sets = enumerate_answer_sets(built.program, max_literals=config.max_literals)
    if len(sets) < max(1, config.min_answer_sets):
        raise Resample(f"{len(sets)} answer sets")
    return _record("ASC", built, seed, sets)


MAKERS = {"ASE": make_ase_sample, "ASV": make_asv_sample, "ASC": make_asc_sample}


def make_sample(task: str, config: SampleConfig, master_seed: int, index: int, attempt: int = 0) -> SampleRecord:
    """Deterministic sample ``index`` of a batch; retries sub-seeds until certified."""
    task = task.upper()
    if task not in MAKERS:
        raise ValueError(f"unknown task {task!r}")
    labels = {"ASE": ASE_LABELS, "ASV": ASV_LABELS}.get(task)
    # the label is fixed per index so resampling does not skew the label mix
    target = random.Random(f"{master_seed}/{task}/{index}/{attempt}/label").choice(labels) if labels else None
    for sub in range(config.resample_budget):
        seed = sample_seed(master_seed, task, index, attempt, sub)
        try:
            rec = MAKERS[task](config, seed, target) if target else MAKERS[task](config, seed)
        except (Resample, GroundSizeExceeded, AugmentationOverflow):
            continue
        rec.id = f"{task.lower()}-{index:06d}"
        rec.metadata["resamples"] = sub
        return rec
    raise ResampleBudgetExhausted(f"{task} sample {index}: no certified sample in {config.resample_budget} draws")


def _job(args) -> SampleRecord:
    return make_sample(*args)


def generate_batch(
    task: str,
    num: int,
    seed: int,
    config: SampleConfig | None = None,
    jobs: int = 1,
) -> list[SampleRecord]:
    """``num`` samples ordered by id; output does not depend on ``jobs``.

    Deduplication runs in rounds: every pending index is generated for its
    current attempt, then indices are accepted in order and a repeated
    graph fingerprint sends that index back with the next attempt.
    """
    config = config or SampleConfig()
    task = task.upper()
    attempt = {i: 0 for i in range(num)}
    accepted: dict[int, SampleRecord] = {}
    seen: set[str] = set()
    executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while attempt:
            todo = sorted(attempt)
            args = [(task, config, seed, i, attempt[i]) for i in todo]
            if executor is None:
                results = list(map(_job, args))
            else:
                results = list(executor.map(_job, args, chunksize=max(1, len(args) // (jobs * 4))))
            for i, rec in zip(todo, results):
                key = rec.metadata["graph_key"]
                if config.dedup and key in seen and attempt[i] + 1 < config.dedup_budget:
                    attempt[i] += 1
                    continue
                rec.metadata["dedup_retries"] = attempt[i]
                seen.add(key)
                accepted[i] = rec
                del attempt[i]
    finally:
        if executor is not None:
            executor.shutdown()
    return [accepted[i] for i in range(num)]

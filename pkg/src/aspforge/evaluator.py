"""Scoring predictions against gold records, and dataset statistics.

Prediction lines are JSON objects::

    {"id": "ase-000001", "task": "ASE", "label": "True"}
    {"id": "asc-000004", "task": "ASC", "answer_sets": [["p(a)", "-q(b)"], ...]}

An ASC answer set may also be given as one string such as ``"{p(a), -q(b)}"``.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import asdict, dataclass, field

from .core import AspError
from .parser import ParseError, parse_literal, parse_literal_set, program_from_dict
from .samplegen import ASE_LABELS, ASV_LABELS, STYLES, SampleRecord
from .solver import classify

log = logging.getLogger(__name__)

NO_ANSWER = "<no answer>"
TASK_CLASSES = {"ASE": ASE_LABELS, "ASV": ASV_LABELS}


class UnknownSampleId(AspError):
    pass


class LabelOutOfDomain(AspError):
    pass


class DuplicatePrediction(AspError):
    pass


class UnparsableLiteral(AspError):
    pass


@dataclass
class ClassScore:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass
class EvalReport:
    task: str
    metric: str
    value: float
    total: int
    answered: int
    per_class: dict[str, ClassScore] = field(default_factory=dict)
    confusion: dict[str, dict[str, int]] = field(default_factory=dict)
    breakdown: dict[str, dict] = field(default_factory=dict)
    unparsable: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)

    def table(self) -> str:
        lines = [f"{self.task}  {self.metric} = {self.value:.4f}  ({self.answered}/{self.total} answered)"]
        if self.per_class:
            lines.append(f"  {'class':<10} {'P':>7} {'R':>7} {'F1':>7} {'n':>6}")
            for c, s in self.per_class.items():
                lines.append(f"  {c:<10} {s.precision:7.4f} {s.recall:7.4f} {s.f1:7.4f} {s.support:6d}")
        for k, v in self.breakdown.items():
            lines.append(f"  {k:<10} {v['correct']}/{v['total']} = {v['accuracy']:.4f}")
        return "\n".join(lines)


def _as_record(g) -> SampleRecord:
    return g if isinstance(g, SampleRecord) else SampleRecord.from_json(g)


def _index_predictions(preds: list[dict], gold_ids: set[str]) -> dict[str, dict]:
    out: dict[str, dict] = {}
    for p in preds:
        pid = p.get("id")
        if pid not in gold_ids:
            raise UnknownSampleId(f"prediction for unknown sample id {pid!r}")
        if pid in out:
            raise DuplicatePrediction(f"more than one prediction for {pid!r}")
        out[pid] = p
    return out


def f1_scores(pairs: list[tuple[str, str]], classes) -> dict[str, ClassScore]:
    """Per-class scores from (gold, predicted) pairs; F1 is 0 when P + R = 0."""
    scores = {}
    for c in classes:
        tp = sum(1 for g, p in pairs if g == c and p == c)
        n_pred = sum(1 for _, p in pairs if p == c)
        n_gold = sum(1 for g, _ in pairs if g == c)
        prec = tp / n_pred if n_pred else 0.0
        rec = tp / n_gold if n_gold else 0.0
        f1 = 2 * prec * rec / (prec + rec) if prec + rec else 0.0
        scores[c] = ClassScore(prec, rec, f1, n_gold)
    return scores


def score_classification(golds, preds: list[dict], classes=None, task: str | None = None) -> EvalReport:
    """Macro-F1 over the task's classes; a missing prediction counts as ``NO_ANSWER``."""
    golds = [_as_record(g) for g in golds]
    task = task or (golds[0].task if golds else "ASE")
    classes = tuple(classes or TASK_CLASSES[task])
    by_id = _index_predictions(preds, {g.id for g in golds})
    pairs = []
    for g in golds:
        if g.label not in classes:
            raise LabelOutOfDomain(f"gold label {g.label!r} of {g.id} not in {classes}")
        p = by_id.get(g.id)
        label = NO_ANSWER if p is None or p.get("label") is None else str(p["label"])
        if label != NO_ANSWER and label not in classes:
            raise LabelOutOfDomain(f"predicted label {label!r} for {g.id} not in {classes}")
        pairs.append((g.label, label))
    per_class = f1_scores(pairs, classes)
    macro = sum(s.f1 for s in per_class.values()) / len(classes) if classes else 0.0
    confusion = {c: {k: 0 for k in classes + (NO_ANSWER,)} for c in classes}
    for gl, pl in pairs:
        confusion[gl][pl] += 1
    breakdown = {}
    if task == "ASV":
        cats: dict[str, list[bool]] = {}
        for g, (gl, pl) in zip(golds, pairs):
            pert = (g.metadata or {}).get("perturbation")
            cat = "Correct" if gl == "Yes" else (pert or {}).get("short", "Unknown")
            cats.setdefault(cat, []).append(gl == pl)
        for cat in sorted(cats):
            hits = cats[cat]
            breakdown[cat] = {"total": len(hits), "correct": sum(hits), "accuracy": sum(hits) / len(hits)}
    return EvalReport(task, "macro_f1", macro, len(golds), sum(1 for _, p in pairs if p != NO_ANSWER),
                      per_class, confusion, breakdown)


def normalize_set(items) -> frozenset[str]:
    """Canonical literal strings of one predicted or gold answer set."""
    if isinstance(items, str):
        lits = parse_literal_set(items)
    else:
        lits = [parse_literal(x) for x in items]
    for x in lits:
        if not x.is_ground:
            raise UnparsableLiteral(f"non-ground literal {x}")
    return frozenset(str(x) for x in lits)


def score_asc(golds, preds: list[dict]) -> EvalReport:
    """Exact match: correct iff some predicted set equals some gold set after normalization."""
    golds = [_as_record(g) for g in golds]
    by_id = _index_predictions(preds, {g.id for g in golds})
    correct, answered, bad = 0, 0, []
    for g in golds:
        gold_sets = {normalize_set(s) for s in g.answer_sets}
        p = by_id.get(g.id)
        if p is None or p.get("answer_sets") is None:
            continue
        answered += 1
        try:
            cand = [normalize_set(s) for s in p["answer_sets"]]
        except (ParseError, UnparsableLiteral) as e:
            log.warning("sample %s: unparsable prediction scored incorrect: %s", g.id, e)
            bad.append(g.id)
            continue
        correct += any(c in gold_sets for c in cand)
    value = correct / len(golds) if golds else 0.0
    breakdown = {"EM": {"total": len(golds), "correct": correct, "accuracy": value}}
    return EvalReport("ASC", "exact_match", value, len(golds), answered, breakdown=breakdown, unparsable=bad)


def evaluate(golds, preds: list[dict]) -> dict[str, EvalReport]:
    """Split by task and score each part with its metric."""
    golds = [_as_record(g) for g in golds]
    ids = {g.id for g in golds}
    for p in preds:
        if p.get("id") not in ids:
            raise UnknownSampleId(f"prediction for unknown sample id {p.get('id')!r}")
    reports = {}
    for task in sorted({g.task for g in golds}):
        gs = [g for g in golds if g.task == task]
        own = {g.id for g in gs}
        ps = [p for p in preds if p.get("id") in own]
        reports[task] = score_asc(gs, ps) if task == "ASC" else score_classification(gs, ps, task=task)
    return reports


# ---------------------------------------------------------------- dataset statistics


def _pct(n: int, total: int) -> float:
    return round(100.0 * n / total, 2) if total else 0.0


def _mean(xs) -> float:
    xs = list(xs)
    return round(sum(xs) / len(xs), 2) if xs else 0.0


def _task_stats(recs: list[SampleRecord]) -> dict:
    n = len(recs)
    progs = [program_from_dict(r.program_symbolic) for r in recs]
    classes = [classify(p) for p in progs]
    arities = [a.arity for p in progs for r in p.all_rules() for a in r.atoms()]
    chains = [r.metadata.get("max_chain", 0) for r in recs]
    sets = [s for r in recs for s in r.answer_sets]
    task = recs[0].task
    labels = TASK_CLASSES.get(task, ())
    label_counts = Counter(r.label for r in recs)
    styles = Counter(r.metadata.get("predicate_style") for r in recs)
    return {
        "samples": n,
        "program_size": {
            "avg_rules": _mean(len(p.rules) for p in progs),
            "avg_facts": _mean(len(p.facts) for p in progs),
            "pred_arity": f"{min(arities)}-{max(arities)}" if arities else "-",
            "max_chain": f"{min(chains)}-{max(chains)}" if chains else "-",
        },
        "syntactic_classes": {
            "positive": _pct(sum(c.positive for c in classes), n),
            "stratified": _pct(sum(c.stratified for c in classes), n),
            "head_cycle_free": _pct(sum(c.head_cycle_free for c in classes), n),
        },
        "answer_sets": {
            "avg_count": _mean(len(r.answer_sets) for r in recs),
            "avg_facts_per_set": _mean(len(s) for s in sets),
        },
        "label_dist": {lab: _pct(label_counts[lab], n) for lab in labels},
        "pred_style": {s: _pct(styles[s], n) for s in STYLES},
    }


def dataset_stats(records) -> dict:
    """Table-style statistics per task, with percentages rounded to 2 places."""
    recs = [_as_record(r) for r in records]
    out = {}
    for task in sorted({r.task for r in recs}):
        out[task] = _task_stats([r for r in recs if r.task == task])
    return out


def stats_table(stats: dict) -> str:
    tasks = sorted(stats)
    rows: list[tuple[str, list[str]]] = []

    def section(title: str, key: str, fmt) -> None:
        rows.append((title, ["" for _ in tasks]))
        names = list(dict.fromkeys(k for t in tasks for k in stats[t][key]))
        for k in names:
            rows.append(("  " + k, [fmt(stats[t][key].get(k, "-")) for t in tasks]))

    def num(v) -> str:
        return v if isinstance(v, str) else f"{v:.2f}"

    def pct(v) -> str:
        return v if isinstance(v, str) else f"{v:.1f}%"

    section("Program size", "program_size", num)
    section("Syntactic classes", "syntactic_classes", pct)
    section("Answer sets", "answer_sets", num)
    section("Label dist.", "label_dist", pct)
    section("Pred. style", "pred_style", pct)
    width = max(len(r[0]) for r in rows) + 2
    head = "Statistic".ljust(width) + "".join(t.rjust(10) for t in tasks)
    body = [name.ljust(width) + "".join(v.rjust(10) for v in vals) for name, vals in rows]
    return "\n".join([head] + body)

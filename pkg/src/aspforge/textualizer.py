"""Template rendering of programs as controlled English sentences."""

from __future__ import annotations

from enum import Enum

from .core import AspError, Atom, BodyLiteral, Literal, Program, Rule


class NonFact(AspError):
    pass


class SentenceTemplate(str, Enum):
    POSITIVE_FACT = "PositiveFact"
    NEGATIVE_FACT = "NegativeFact"
    RULE_CONDITIONAL = "RuleConditional"


def atom_text(a: Atom) -> str:
    # constants lose their quotes; case is kept
    if not a.args:
        return a.predicate
    return f"{a.predicate}({', '.join(t.name for t in a.args)})"


def claim(lit: Literal) -> str:
    return f"{atom_text(lit.atom)} is {'explicitly false' if lit.neg else 'true'}"


def condition(b: BodyLiteral) -> str:
    return f"there is no evidence that {claim(b.literal)}" if b.naf else claim(b.literal)


def template_of(r: Rule) -> SentenceTemplate:
    if r.is_fact:
        return SentenceTemplate.NEGATIVE_FACT if r.head[0].neg else SentenceTemplate.POSITIVE_FACT
    return SentenceTemplate.RULE_CONDITIONAL


def textualize_fact(f: Rule) -> str:
    if not f.is_fact:
        raise NonFact(f"not a fact: {f}")
    return f"{claim(f.head[0])}."


def textualize_rule(r: Rule) -> str:
    if r.is_fact:
        return textualize_fact(r)
    conds = " and ".join(condition(b) for b in r.body)
    heads = " or ".join(claim(h) for h in r.head)
    if not r.head:
        return f"It cannot be the case that {conds}." if conds else "It cannot be the case that nothing holds."
    if not r.body:
        return f"{heads}."
    return f"If {conds}, then {heads}."


def textualize_program(p: Program) -> list[str]:
    return [textualize_rule(r) for r in p.all_rules()]

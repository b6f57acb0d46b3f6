"""Abstract syntax for the supported ASP fragment.

Terms, atoms, literals (with strong negation), body literals (with default
negation), rules, programs and helpers for ground literal sets.  Everything
here is immutable; canonical ordering lives in :func:`literal_key`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

VARIABLE_RE = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")
BARE_CONSTANT_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


class AspError(Exception):
    """Base class for all domain errors raised by the package."""


class NonGroundLiteral(AspError):
    pass


class ArityMismatch(AspError):
    def __init__(self, predicate: str, arities: Iterable[int]):
        self.predicate = predicate
        self.arities = sorted(set(arities))
        super().__init__(f"predicate {predicate!r} used with arities {self.arities}")


@dataclass(frozen=True)
class Term:
    name: str
    variable: bool = False

    def __post_init__(self):
        if self.variable and not VARIABLE_RE.match(self.name):
            raise ValueError(f"bad variable name {self.name!r}")
        if not self.variable and not self.name:
            raise ValueError("constant name must be nonempty")

    @classmethod
    def var(cls, name: str) -> Term:
        return cls(name, True)

    @classmethod
    def const(cls, name: str) -> Term:
        return cls(name, False)

    @property
    def is_ground(self) -> bool:
        return not self.variable

    def __str__(self) -> str:
        if self.variable or BARE_CONSTANT_RE.match(self.name):
            return self.name
        escaped = self.name.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()

    def __post_init__(self):
        if not self.predicate:
            raise ValueError("empty predicate name")
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def is_ground(self) -> bool:
        return all(t.is_ground for t in self.args)

    def variables(self) -> set[str]:
        return {t.name for t in self.args if t.variable}

    def substitute(self, binding: dict[str, Term]) -> Atom:
        return Atom(self.predicate, tuple(binding.get(t.name, t) if t.variable else t for t in self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class Literal:
    atom: Atom
    neg: bool = False

    def complement(self) -> Literal:
        return Literal(self.atom, not self.neg)

    @property
    def predicate(self) -> str:
        return self.atom.predicate

    @property
    def is_ground(self) -> bool:
        return self.atom.is_ground

    def substitute(self, binding: dict[str, Term]) -> Literal:
        return Literal(self.atom.substitute(binding), self.neg)

    def __str__(self) -> str:
        return f"-{self.atom}" if self.neg else str(self.atom)


@dataclass(frozen=True)
class BodyLiteral:
    literal: Literal
    naf: bool = False

    def substitute(self, binding: dict[str, Term]) -> BodyLiteral:
        return BodyLiteral(self.literal.substitute(binding), self.naf)

    def __str__(self) -> str:
        return f"not {self.literal}" if self.naf else str(self.literal)


def negation_flip(b: BodyLiteral) -> BodyLiteral:
    """Toggle strong and default negation together: ``not p`` <-> ``-p``."""
    return BodyLiteral(b.literal.complement(), not b.naf)


def _dedup(items: Iterable) -> tuple:
    return tuple(dict.fromkeys(items))


@dataclass(frozen=True)
class Rule:
    head: tuple[Literal, ...] = ()
    body: tuple[BodyLiteral, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "head", _dedup(self.head))
        object.__setattr__(self, "body", _dedup(self.body))

    @property
    def is_constraint(self) -> bool:
        return not self.head

    @property
    def is_disjunctive(self) -> bool:
        return len(self.head) > 1

    @property
    def is_fact(self) -> bool:
        return len(self.head) == 1 and not self.body and self.head[0].is_ground

    @property
    def is_ground(self) -> bool:
        return all(h.is_ground for h in self.head) and all(b.literal.is_ground for b in self.body)

    def atoms(self) -> Iterator[Atom]:
        for h in self.head:
            yield h.atom
        for b in self.body:
            yield b.literal.atom

    def variables(self) -> set[str]:
        out: set[str] = set()
        for a in self.atoms():
            out |= a.variables()
        return out

    def substitute(self, binding: dict[str, Term]) -> Rule:
        return Rule(
            tuple(h.substitute(binding) for h in self.head),
            tuple(b.substitute(binding) for b in self.body),
        )

    def __str__(self) -> str:
        head = " | ".join(map(str, self.head))
        if not self.body:
            return f"{head}." if head else ":- ."
        body = ", ".join(map(str, self.body))
        return f"{head} :- {body}." if head else f":- {body}."


@dataclass(frozen=True)
class Program:
    """A pair of facts and rules.  Facts are ground, single-headed, bodiless."""

    facts: tuple[Rule, ...] = ()
    rules: tuple[Rule, ...] = ()
    _sig: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "facts", tuple(self.facts))
        object.__setattr__(self, "rules", tuple(self.rules))
        for f in self.facts:
            if not f.is_fact:
                raise ValueError(f"not a fact: {f}")

    @classmethod
    def from_rules(cls, rules: Iterable[Rule]) -> Program:
        facts, others = [], []
        for r in rules:
            (facts if r.is_fact else others).append(r)
        return cls(tuple(_dedup(facts)), tuple(_dedup(others)))

    def all_rules(self) -> tuple[Rule, ...]:
        return self.facts + self.rules

    @property
    def signature(self) -> dict[str, int]:
        """Predicate -> arity; raises :class:`ArityMismatch` when inconsistent."""
        if self._sig is None:
            seen: dict[str, set[int]] = {}
            for r in self.all_rules():
                for a in r.atoms():
                    seen.setdefault(a.predicate, set()).add(a.arity)
            for pred, arities in seen.items():
                if len(arities) > 1:
                    raise ArityMismatch(pred, arities)
            object.__setattr__(self, "_sig", {p: next(iter(a)) for p, a in seen.items()})
        return dict(self._sig)

    def constants(self) -> list[str]:
        names = {t.name for r in self.all_rules() for a in r.atoms() for t in a.args if not t.variable}
        return sorted(names)

    def canonical(self) -> Program:
        """Same program with facts and rules in a fixed order."""
        return Program(
            tuple(sorted(set(self.facts), key=rule_key)),
            tuple(sorted(set(self.rules), key=rule_key)),
        )

    def __str__(self) -> str:
        return "\n".join(str(r) for r in self.all_rules())


def term_key(t: Term) -> tuple:
    return (t.variable, t.name)


def literal_key(lit: Literal) -> tuple:
    """Sort key: predicate, then sign (positive first), then arguments."""
    return (lit.atom.predicate, lit.neg, tuple(term_key(t) for t in lit.atom.args))


def body_key(b: BodyLiteral) -> tuple:
    return (b.naf, literal_key(b.literal))


def rule_key(r: Rule) -> tuple:
    return (
        tuple(literal_key(h) for h in r.head),
        tuple(body_key(b) for b in r.body),
    )


def is_consistent(literals: Iterable[Literal]) -> bool:
    lits = set(literals)
    return not any(lit.complement() in lits for lit in lits if lit.neg)


def canonicalize(literals: Iterable[Literal]) -> list[Literal]:
    lits = set(literals)
    for lit in lits:
        if not lit.is_ground:
            raise NonGroundLiteral(str(lit))
    return sorted(lits, key=literal_key)


def format_literal_set(literals: Iterable[Literal]) -> str:
    return "{" + ", ".join(map(str, canonicalize(literals))) + "}"

"""Safety checking and naive Herbrand instantiation."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .core import AspError, Atom, Program, Rule, Term


class UnsafeRule(AspError):
    def __init__(self, rule: Rule, variables: list[str]):
        self.rule = rule
        self.variables = variables
        super().__init__(f"unsafe variables {', '.join(variables)} in rule: {rule}")


class EmptyUniverse(AspError):
    pass


@dataclass(frozen=True)
class GroundProgram:
    rules: tuple[Rule, ...]
    atoms: frozenset[Atom]

    @classmethod
    def from_rules(cls, rules: Iterable[Rule]) -> GroundProgram:
        rules = tuple(dict.fromkeys(rules))
        for r in rules:
            if not r.is_ground:
                raise ValueError(f"non-ground rule in ground program: {r}")
        return cls(rules, frozenset(a for r in rules for a in r.atoms()))

    def to_program(self) -> Program:
        return Program.from_rules(self.rules)


def safety_check(rule: Rule) -> list[str]:
    """Variables of the head or of ``not`` literals missing from the positive body.

    An empty list means the rule is safe.
    """
    bound: set[str] = set()
    for b in rule.body:
        if not b.naf:
            bound |= b.literal.atom.variables()
    needed: set[str] = set()
    for h in rule.head:
        needed |= h.atom.variables()
    for b in rule.body:
        if b.naf:
            needed |= b.literal.atom.variables()
    return sorted(needed - bound)


def ground_rule(rule: Rule, constants: list[str]) -> list[Rule]:
    variables = sorted(rule.variables())
    if not variables:
        return [rule]
    terms = [Term.const(c) for c in constants]
    return [
        rule.substitute(dict(zip(variables, combo)))
        for combo in itertools.product(terms, repeat=len(variables))
    ]


def ground(program: Program) -> GroundProgram:
    """Instantiate every rule with every substitution over the program's constants."""
    for r in program.all_rules():
        unsafe = safety_check(r)
        if unsafe:
            raise UnsafeRule(r, unsafe)
    constants = program.constants()
    if not constants and any(r.variables() for r in program.rules):
        raise EmptyUniverse("program has variables but no constants")
    out: list[Rule] = []
    for r in program.all_rules():
        out.extend(ground_rule(r, constants))
    return GroundProgram.from_rules(out)

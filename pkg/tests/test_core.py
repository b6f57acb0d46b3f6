from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from aspforge.core import (
    Atom,
    BodyLiteral,
    Literal,
    NonGroundLiteral,
    Program,
    Rule,
    Term,
    canonicalize,
    format_literal_set,
    is_consistent,
    negation_flip,
)
from aspforge.parser import parse_literal, parse_rule

from strategies import body_literals, ground_literals


def L(text: str) -> Literal:
    return parse_literal(text)


def B(text: str) -> BodyLiteral:
    return parse_rule(f":- {text}.").body[0]


def test_canonical_sign_ordering():
    assert [str(x) for x in canonicalize([L("b"), L("-a")])] == ["-a", "b"]


def test_canonical_argument_ordering():
    assert [str(x) for x in canonicalize([L('p("b")'), L('p("a")')])] == ["p(a)", "p(b)"]


def test_canonical_rejects_variables():
    with pytest.raises(NonGroundLiteral):
        canonicalize([L("p(X)")])


def test_format_literal_set():
    assert format_literal_set([L('CanFly("Tweety")'), L('Bird("Tweety")')]) == '{Bird("Tweety"), CanFly("Tweety")}'


@pytest.mark.parametrize(
    "before, after",
    [("not p", "-p"), ("not -p", "p"), ("p", "not -p"), ("-p", "not p")],
)
def test_negation_flip_table(before, after):
    assert negation_flip(B(before)) == B(after)


def test_quoted_and_bare_constants_coincide():
    assert L('p("a")') == L("p(a)")
    assert str(Term.const("Tweety Bird")) == '"Tweety Bird"'


@given(body_literals())
def test_flip_is_involution(b):
    assert negation_flip(negation_flip(b)) == b


@given(st.lists(ground_literals(), max_size=8), st.randoms())
def test_canonicalize_order_insensitive(lits, rnd):
    shuffled = list(lits)
    rnd.shuffle(shuffled)
    assert canonicalize(shuffled) == canonicalize(lits)


@given(st.lists(ground_literals(), max_size=8))
def test_consistency_matches_pairwise_scan(lits):
    clash = any(
        x.atom == y.atom and x.neg != y.neg for x, y in itertools.combinations(lits, 2)
    )
    assert is_consistent(lits) == (not clash)


def test_program_splits_facts():
    p = Program.from_rules([parse_rule("p(a)."), parse_rule("q(X) :- p(X)."), parse_rule("p(a).")])
    assert len(p.facts) == 1 and len(p.rules) == 1


def test_rule_flags():
    assert parse_rule(":- p, q.").is_constraint
    assert parse_rule("a | b :- c.").is_disjunctive
    assert parse_rule("-p.").is_fact
    assert not Rule((Literal(Atom("p", (Term.var("X"),))),)).is_fact


def test_random_literals_print_and_reparse():
    rng = random.Random(3)
    for _ in range(200):
        atom = Atom(rng.choice("pqr"), tuple(Term.const(rng.choice(["a", "Bob", "x y"])) for _ in range(rng.randint(0, 3))))
        lit = Literal(atom, rng.random() < 0.5)
        assert L(str(lit)) == lit

"""Parse, ground and solve small disjunctive logic programs; generate and score ASP benchmark samples."""

from .core import AspError, Atom, BodyLiteral, Literal, Program, Rule, Term
from .parser import ParseError, parse_literal, parse_program, print_program
from .solver import classify, entail, enumerate_answer_sets, verify

__version__ = "0.1.0"

__all__ = [
    "AspError",
    "Atom",
    "BodyLiteral",
    "Literal",
    "ParseError",
    "Program",
    "Rule",
    "Term",
    "classify",
    "entail",
    "enumerate_answer_sets",
    "parse_literal",
    "parse_program",
    "print_program",
    "verify",
]

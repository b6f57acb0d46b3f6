"""Reader and printer for DLV-style ``.lp`` text.

Grammar (whitespace-insensitive, ``%`` starts a line comment)::

    statement := [head] [":-" [body]] "."
    head      := literal ("|" literal)*
    body      := ["not"] literal ("," ["not"] literal)*
    literal   := ["-"] atom
    atom      := name ["(" term ("," term)* ")"]
    term      := Variable | constant | "quoted constant"

Identifiers in argument position starting with an uppercase letter are
variables; in atom position any identifier is a predicate name.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .core import AspError, Atom, BodyLiteral, Literal, Program, Rule, Term


class DiagnosticKind(str, Enum):
    SYNTAX_ERROR = "SyntaxError"
    ARITY_MISMATCH = "ArityMismatch"
    HEAD_DEFAULT_NEGATION = "HeadDefaultNegation"


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    column: int
    kind: DiagnosticKind
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.kind.value}: {self.message}"


class ParseError(AspError):
    def __init__(self, diagnostics: list[ParseDiagnostic], source: str | None = None):
        self.diagnostics = diagnostics
        self.source = source
        prefix = f"{source}:" if source else ""
        super().__init__("\n".join(prefix + str(d) for d in diagnostics))


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<if>:-)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[.,|(){}\-])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


class _Fail(Exception):
    def __init__(self, tok: _Tok, kind: DiagnosticKind, message: str):
        self.tok = tok
        self.diag = ParseDiagnostic(tok.line, tok.col, kind, message)


def _tokenize(text: str) -> tuple[list[_Tok], list[ParseDiagnostic]]:
    toks: list[_Tok] = []
    diags: list[ParseDiagnostic] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            diags.append(ParseDiagnostic(line, pos - line_start + 1, DiagnosticKind.SYNTAX_ERROR,
                                         f"unexpected character {text[pos]!r}"))
            pos += 1
            continue
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks, diags


def _unquote(s: str) -> str:
    return re.sub(r"\\(.)", r"\1", s[1:-1])


class _Reader:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        return self.tok.kind != "string" and self.tok.text == text

    def next(self) -> _Tok:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        if not self.at(text):
            raise _Fail(self.tok, DiagnosticKind.SYNTAX_ERROR,
                        f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.next()

    def skip_statement(self, failed: _Tok | None = None) -> None:
        # resume at the offending token; it may itself be the terminating '.'
        if failed is not None:
            self.i = min(self.i, next(k for k, t in enumerate(self.toks) if t is failed))
        while self.tok.kind != "eof" and not self.at("."):
            self.next()
        self.next()

    def term(self) -> Term:
        t = self.next()
        if t.kind == "string":
            name = _unquote(t.text)
            if not name:
                raise _Fail(t, DiagnosticKind.SYNTAX_ERROR, "empty constant")
            return Term.const(name)
        if t.kind == "ident":
            if t.text[0].isupper():
                return Term.var(t.text)
            if t.text[0] == "_":
                raise _Fail(t, DiagnosticKind.SYNTAX_ERROR, "anonymous variables are not supported")
            return Term.const(t.text)
        raise _Fail(t, DiagnosticKind.SYNTAX_ERROR, f"expected a term, found {t.text or 'end of input'!r}")

    def atom(self) -> tuple[Atom, _Tok]:
        t = self.next()
        if t.kind != "ident" or t.text == "not":
            raise _Fail(t, DiagnosticKind.SYNTAX_ERROR, f"expected a predicate, found {t.text or 'end of input'!r}")
        args: list[Term] = []
        if self.at("("):
            self.next()
            args.append(self.term())
            while self.at(","):
                self.next()
                args.append(self.term())
            self.expect(")")
        return Atom(t.text, tuple(args)), t

    def literal(self) -> Literal:
        neg = False
        if self.at("-"):
            self.next()
            neg = True
        atom, _ = self.atom()
        return Literal(atom, neg)

    def body_literal(self) -> BodyLiteral:
        if self.at("not"):
            self.next()
            return BodyLiteral(self.literal(), True)
        return BodyLiteral(self.literal(), False)

    def head_literal(self) -> Literal:
        if self.at("not"):
            raise _Fail(self.tok, DiagnosticKind.HEAD_DEFAULT_NEGATION,
                        "default negation is not allowed in a rule head")
        return self.literal()

    def statement(self) -> Rule:
        start = self.tok
        head: list[Literal] = []
        body: list[BodyLiteral] = []
        if not self.at(":-"):
            head.append(self.head_literal())
            while self.at("|"):
                self.next()
                head.append(self.head_literal())
        if self.at(":-"):
            self.next()
            if not self.at("."):
                body.append(self.body_literal())
                while self.at(","):
                    self.next()
                    body.append(self.body_literal())
        self.expect(".")
        if not head and not body:
            raise _Fail(start, DiagnosticKind.SYNTAX_ERROR, "empty statement")
        return Rule(tuple(head), tuple(body))


def _arity_diagnostics(rules: list[tuple[Rule, _Tok]]) -> list[ParseDiagnostic]:
    first: dict[str, int] = {}
    diags = []
    for rule, tok in rules:
        for a in rule.atoms():
            known = first.setdefault(a.predicate, a.arity)
            if known != a.arity:
                diags.append(ParseDiagnostic(
                    tok.line, tok.col, DiagnosticKind.ARITY_MISMATCH,
                    f"predicate {a.predicate!r} has arity {a.arity}, previously {known}"))
                break
    return diags


def parse_program(text: str, *, strict_arity: bool = True, source: str | None = None) -> Program:
    """Parse ``.lp`` text; raises :class:`ParseError` listing every diagnostic.

    With ``strict_arity=False`` a name used with several arities denotes
    several predicates (DLV's reading) instead of being an error.
    """
    toks, diags = _tokenize(text)
    reader = _Reader(toks)
    parsed: list[tuple[Rule, _Tok]] = []
    while reader.tok.kind != "eof":
        start = reader.tok
        try:
            parsed.append((reader.statement(), start))
        except _Fail as e:
            diags.append(e.diag)
            reader.skip_statement(e.tok)
    if strict_arity:
        diags.extend(_arity_diagnostics(parsed))
    if diags:
        diags.sort(key=lambda d: (d.line, d.column))
        raise ParseError(diags, source)
    return Program.from_rules(r for r, _ in parsed)


def _parse_single(text: str, what: str, fn):
    toks, diags = _tokenize(text)
    if diags:
        raise ParseError(diags)
    reader = _Reader(toks)
    try:
        value = fn(reader)
        if reader.at("."):
            reader.next()
        if reader.tok.kind != "eof":
            raise _Fail(reader.tok, DiagnosticKind.SYNTAX_ERROR, f"trailing input after {what}")
    except _Fail as e:
        raise ParseError([e.diag]) from None
    return value


def parse_literal(text: str) -> Literal:
    """Parse one literal such as ``-p("a", b)``; a trailing ``.`` is allowed."""
    return _parse_single(text, "literal", _Reader.literal)


def parse_atom(text: str) -> Atom:
    return _parse_single(text, "atom", lambda r: r.atom()[0])


def parse_rule(text: str) -> Rule:
    return _parse_single(text.rstrip().rstrip(".") + ".", "rule", _Reader.statement)


def print_program(program: Program) -> str:
    """One statement per line, facts first."""
    lines = [str(r) for r in program.all_rules()]
    return "\n".join(lines) + ("\n" if lines else "")



def _literal_set(reader: _Reader) -> list[Literal]:
    braced = reader.at("{")
    if braced:
        reader.next()
    out: list[Literal] = []
    if not reader.at("}") and reader.tok.kind != "eof":
        out.append(reader.literal())
        while reader.at(","):
            reader.next()
            out.append(reader.literal())
    if braced:
        reader.expect("}")
    return out


def parse_literal_set(text: str) -> list[Literal]:
    """Parse ``{l1, l2, ...}`` (braces optional) into a list of literals."""
    return _parse_single(text, "literal set", _literal_set)


def _term_dict(t: Term) -> dict:
    return {"name": t.name, "variable": t.variable}


def _literal_dict(lit: Literal) -> dict:
    return {"predicate": lit.predicate, "args": [_term_dict(t) for t in lit.atom.args], "strong_neg": lit.neg}


def _literal_from(d: dict) -> Literal:
    args = tuple(Term(a["name"], a["variable"]) for a in d["args"])
    return Literal(Atom(d["predicate"], args), d["strong_neg"])


def rule_to_dict(r: Rule) -> dict:
    return {
        "head": [_literal_dict(h) for h in r.head],
        "body": [{"literal": _literal_dict(b.literal), "default_neg": b.naf} for b in r.body],
    }


def rule_from_dict(d: dict) -> Rule:
    return Rule(
        tuple(_literal_from(h) for h in d["head"]),
        tuple(BodyLiteral(_literal_from(b["literal"]), b["default_neg"]) for b in d["body"]),
    )


def program_to_dict(p: Program) -> dict:
    """Structured JSON form; the inverse is :func:`program_from_dict`."""
    return {"facts": [rule_to_dict(f) for f in p.facts], "rules": [rule_to_dict(r) for r in p.rules]}


def program_from_dict(d: dict) -> Program:
    return Program(tuple(rule_from_dict(f) for f in d["facts"]), tuple(rule_from_dict(r) for r in d["rules"]))

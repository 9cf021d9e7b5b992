"""Lexer and recursive-descent parser for the input language.

Surface syntax (``%`` starts a line comment, programs live in ``.lp`` files):

    fact.
    head :- body.                      % normal rule
    a | b :- body.                     % disjunction ("a ; b" also accepted)
    :- body.                           % constraint
    {a; b} :- body.                    % choice, optional bounds: 1 {a; b} 2
    p :- q(X), not r(X).               % default negation
    sat :- #sum{2:a; 1:b; 1:c} > 1.    % sum aggregate, weight:atom elements
    ok :- #count{a; b} >= 1.           % count aggregate, weights implied 1
    f. %soft                           % fact eligible for removal in
                                       % inconsistency explanations

Terms are constants (lowercase), integers (optionally negative), and
variables (uppercase). Function symbols are rejected. Comparisons:
> >= < <= = !=. A predicate keeps one arity across the whole program.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ArityMismatch, ParseError
from .syntax import (
    Atom,
    AggregateElement,
    AggregateLiteral,
    BodyLiteral,
    ChoiceHead,
    HIDDEN_PREFIX,
    INT_LIMIT,
    Literal,
    Program,
    Rule,
    Span,
    Term,
    const,
    num,
    var,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<implies>:-)
  | (?P<cmp>>=|<=|!=|>|<|=)
  | (?P<int>-?\d+)
  | (?P<aggname>\#[a-z]+)
  | (?P<ident>[a-z][A-Za-z0-9_]*)
  | (?P<variable>[A-Z][A-Za-z0-9_]*)
  | (?P<punct>[(){}.,;:|])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> tuple[list[Token], set[int]]:
    """Token stream plus the set of lines carrying a %soft marker."""
    tokens: list[Token] = []
    soft_lines: set[int] = set()
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup or ""
        value = m.group()
        if kind == "comment":
            if value == "%soft" or value.startswith("%soft") and value[5:6] in ("", " ", "\t"):
                soft_lines.add(line)
        elif kind != "ws":
            tokens.append(Token(kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens, soft_lines


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.cur
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, message: str, expected: str | None = None) -> ParseError:
        tok = self.cur
        shown = tok.text or "end of input"
        return ParseError(f"{message}, got {shown!r}", tok.line, tok.column, expected)

    def expect(self, kind: str, text: str | None = None, expected: str | None = None) -> Token:
        tok = self.cur
        if tok.kind != kind or (text is not None and tok.text != text):
            raise self.fail("unexpected token", expected or text or kind)
        return self.advance()

    def at_punct(self, text: str) -> bool:
        return self.cur.kind == "punct" and self.cur.text == text

    # --- grammar ---------------------------------------------------------

    def parse_program(self) -> Program:
        rules: list[Rule] = []
        spans: list[Span] = []
        while self.cur.kind != "eof":
            start = self.cur
            rules.append(self.parse_rule())
            spans.append(Span(start.line, start.column))
        return Program(tuple(rules), tuple(spans))

    def parse_rule(self) -> Rule:
        head: tuple[Atom, ...] | ChoiceHead
        body: tuple[BodyLiteral, ...] = ()
        if self.cur.kind == "implies":
            self.advance()
            head = ()
            body = self.parse_body()
        else:
            head = self.parse_head()
            if self.cur.kind == "implies":
                self.advance()
                body = self.parse_body()
        self.expect("punct", ".", expected="'.'")
        return Rule(head, body)

    def parse_head(self) -> tuple[Atom, ...] | ChoiceHead:
        lower: int | None = None
        if self.cur.kind == "int":
            lower = self.parse_int()
            if not self.at_punct("{"):
                raise self.fail("expected choice after lower bound", "'{'")
        if self.at_punct("{"):
            return self.parse_choice(lower)
        atoms = [self.parse_atom()]
        while self.at_punct("|") or self.at_punct(";"):
            self.advance()
            atoms.append(self.parse_atom())
        return tuple(atoms)

    def parse_choice(self, lower: int | None) -> ChoiceHead:
        open_tok = self.cur
        self.expect("punct", "{")
        atoms = [self.parse_atom()]
        while self.at_punct(";"):
            self.advance()
            atoms.append(self.parse_atom())
        self.expect("punct", "}", expected="'}'")
        upper: int | None = None
        if self.cur.kind == "int":
            upper = self.parse_int()
        if len(set(atoms)) != len(atoms):
            raise ParseError("duplicate atom in choice", open_tok.line, open_tok.column)
        return ChoiceHead(tuple(atoms), lower, upper)

    def parse_body(self) -> tuple[BodyLiteral, ...]:
        literals = [self.parse_body_literal()]
        while self.at_punct(","):
            self.advance()
            literals.append(self.parse_body_literal())
        return tuple(literals)

    def parse_body_literal(self) -> BodyLiteral:
        negated = False
        if self.cur.kind == "ident" and self.cur.text == "not":
            self.advance()
            negated = True
            if self.cur.kind == "ident" and self.cur.text == "not":
                raise self.fail("double negation is not representable")
        if self.cur.kind == "aggname":
            return self.parse_aggregate(negated)
        return Literal(self.parse_atom(), negated)

    def parse_aggregate(self, negated: bool) -> AggregateLiteral:
        name_tok = self.expect("aggname")
        function = name_tok.text[1:]
        if function not in ("sum", "count"):
            raise ParseError(
                f"unknown aggregate {name_tok.text!r}", name_tok.line, name_tok.column,
                "'#sum' or '#count'",
            )
        self.expect("punct", "{", expected="'{'")
        elements = [self.parse_element(function)]
        while self.at_punct(";"):
            self.advance()
            elements.append(self.parse_element(function))
        self.expect("punct", "}", expected="'}'")
        if self.cur.kind != "cmp":
            raise self.fail("expected comparison after aggregate", "one of > >= < <= = !=")
        comparison = self.advance().text
        bound = self.parse_int()
        seen: set[Atom] = set()
        for e in elements:
            if e.atom in seen:
                raise ParseError(
                    f"duplicate atom {e.atom} within one aggregate",
                    name_tok.line, name_tok.column,
                )
            seen.add(e.atom)
        return AggregateLiteral(function, tuple(elements), comparison, bound, negated)

    def parse_element(self, function: str) -> AggregateElement:
        if self.cur.kind == "int":
            weight = self.parse_int()
            self.expect("punct", ":", expected="':'")
            atom = self.parse_atom()
            if function == "count" and weight != 1:
                raise self.fail("count elements must have weight 1")
            return AggregateElement(weight, atom)
        if function == "count":
            # bare atom sugar: #count{a; b} means weight 1 each
            return AggregateElement(1, self.parse_atom())
        raise self.fail("sum elements need an explicit weight", "integer weight")

    def parse_atom(self) -> Atom:
        name_tok = self.cur
        if name_tok.kind != "ident" or name_tok.text == "not":
            raise self.fail("expected atom", "predicate name")
        self._check_reserved(name_tok)
        self.advance()
        args: list[Term] = []
        if self.at_punct("("):
            self.advance()
            args.append(self.parse_term())
            while self.at_punct(","):
                self.advance()
                args.append(self.parse_term())
            self.expect("punct", ")", expected="')'")
        return Atom(name_tok.text, tuple(args))

    def parse_term(self) -> Term:
        tok = self.cur
        if tok.kind == "int":
            return num(self.parse_int())
        if tok.kind == "variable":
            self.advance()
            return var(tok.text)
        if tok.kind == "ident":
            self._check_reserved(tok)
            self.advance()
            if self.at_punct("("):
                raise ParseError(
                    f"function symbol {tok.text!r} not allowed (terms are function-free)",
                    tok.line, tok.column,
                )
            return const(tok.text)
        raise self.fail("expected term", "constant, integer or variable")

    def parse_int(self) -> int:
        tok = self.expect("int", expected="integer")
        value = int(tok.text)
        if abs(value) > INT_LIMIT:
            raise ParseError(f"integer {value} out of range", tok.line, tok.column)
        return value

    def _check_reserved(self, tok: Token) -> None:
        if tok.text.startswith(HIDDEN_PREFIX):
            raise ParseError(
                f"identifier {tok.text!r} uses the reserved prefix {HIDDEN_PREFIX!r}",
                tok.line, tok.column,
            )


def _check_arities(program: Program) -> None:
    seen: dict[str, tuple[int, Span]] = {}
    for rule, span in zip(program.rules, program.spans or [Span(0, 0)] * len(program.rules)):
        for atom in _rule_atoms(rule):
            known = seen.get(atom.predicate)
            if known is None:
                seen[atom.predicate] = (atom.arity, span)
            elif known[0] != atom.arity:
                raise ArityMismatch(
                    f"predicate {atom.predicate!r} used with arity {atom.arity} "
                    f"and {known[0]}",
                    span.line, span.column,
                )


def _rule_atoms(rule: Rule):
    yield from rule.head_atoms
    for lit in rule.body:
        if isinstance(lit, Literal):
            yield lit.atom
        else:
            for e in lit.elements:
                yield e.atom


def _apply_soft_markers(program: Program, soft_lines: set[int]) -> Program:
    if not soft_lines:
        return program
    # A marker applies to the rule that starts on (or spans onto) its line;
    # rules print one per line so spans identify them uniquely.
    boundaries = [s.line for s in program.spans]
    rules = list(program.rules)
    for marker_line in sorted(soft_lines):
        target = None
        for idx, start in enumerate(boundaries):
            if start <= marker_line:
                target = idx
            else:
                break
        if target is None:
            raise ParseError("%soft marker before any rule", marker_line, 1)
        rule = rules[target]
        if not rule.is_fact:
            raise ParseError("%soft marker on a non-fact rule", marker_line, 1)
        rules[target] = Rule(rule.head, rule.body, soft=True)
    return Program(tuple(rules), program.spans)


def parse_program(text: str) -> Program:
    """Parse a full program; raises ParseError/ArityMismatch on bad input."""
    tokens, soft_lines = _tokenize(text)
    program = _Parser(tokens).parse_program()
    program = _apply_soft_markers(program, soft_lines)
    _check_arities(program)
    return program


def parse_atom(text: str) -> Atom:
    """Parse a single ground or non-ground atom, e.g. from CLI arguments."""
    tokens, _ = _tokenize(text)
    parser = _Parser(tokens)
    atom = parser.parse_atom()
    if parser.cur.kind != "eof":
        raise parser.fail("trailing input after atom")
    return atom


def parse_ground_atom(text: str) -> Atom:
    atom = parse_atom(text)
    if not atom.is_ground:
        raise ParseError(f"atom {atom} is not ground")
    return atom


def parse_atom_list(text: str) -> tuple[Atom, ...]:
    """Comma-separated ground atoms; empty string means the empty set."""
    stripped = text.strip()
    if not stripped or stripped in ("{}", "()"):
        return ()
    if stripped.startswith("{") and stripped.endswith("}"):
        stripped = stripped[1:-1]
    tokens, _ = _tokenize(stripped)
    parser = _Parser(tokens)
    atoms = [parser.parse_atom()]
    while parser.at_punct(","):
        parser.advance()
        atoms.append(parser.parse_atom())
    if parser.cur.kind != "eof":
        raise parser.fail("trailing input after atom list")
    for a in atoms:
        if not a.is_ground:
            raise ParseError(f"atom {a} is not ground")
    return tuple(atoms)

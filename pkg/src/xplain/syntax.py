"""AST for the input language and its printer.

Terms are function-free: constants (lowercase identifiers), integers, and
variables (uppercase identifiers). Rules have either a disjunctive head
(possibly empty, which makes the rule a constraint) or a choice head with
optional cardinality bounds. Bodies mix ordinary literals with aggregate
literals of the form ``#sum{w:atom; ...} OP n`` / ``#count{atom; ...} OP n``.

`pretty_print` emits one rule per line in the same surface syntax the
parser accepts, so printing and re-parsing round-trips the AST.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

# Identifiers with this prefix are reserved for generated (hidden) atoms,
# e.g. the complements introduced by choice-rule rewriting. The parser
# rejects them in user input so generated names can never be captured.
HIDDEN_PREFIX = "xp__"

COMPARISONS = (">", ">=", "<", "<=", "=", "!=")

# Weights, bounds and integer constants stay within machine range so the
# compiled kernel can accumulate sums in 64-bit arithmetic.
INT_LIMIT = 2**31 - 1


@dataclass(frozen=True, slots=True)
class Term:
    kind: str  # "const" | "int" | "var"
    value: Union[str, int]

    def __post_init__(self):
        if self.kind == "const":
            if not (isinstance(self.value, str) and self.value[:1].islower()):
                raise ValueError(f"constant must start lowercase: {self.value!r}")
        elif self.kind == "var":
            if not (isinstance(self.value, str) and self.value[:1].isupper()):
                raise ValueError(f"variable must start uppercase: {self.value!r}")
        elif self.kind == "int":
            if not isinstance(self.value, int) or abs(self.value) > INT_LIMIT:
                raise ValueError(f"integer out of range: {self.value!r}")
        else:
            raise ValueError(f"unknown term kind: {self.kind!r}")

    @property
    def is_ground(self) -> bool:
        return self.kind != "var"

    def __str__(self) -> str:
        return str(self.value)


def const(name: str) -> Term:
    return Term("const", name)


def num(value: int) -> Term:
    return Term("int", value)


def var(name: str) -> Term:
    return Term("var", name)


@dataclass(frozen=True, slots=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()

    @property
    def is_ground(self) -> bool:
        return all(t.is_ground for t in self.args)

    @property
    def arity(self) -> int:
        return len(self.args)

    def variables(self) -> Iterator[str]:
        for t in self.args:
            if t.kind == "var":
                yield t.value  # type: ignore[misc]

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(map(str, self.args))})"


@dataclass(frozen=True, slots=True)
class Literal:
    atom: Atom
    negated: bool = False

    def __str__(self) -> str:
        return f"not {self.atom}" if self.negated else str(self.atom)


@dataclass(frozen=True, slots=True)
class AggregateElement:
    weight: int
    atom: Atom

    def __str__(self) -> str:
        return f"{self.weight}:{self.atom}"


@dataclass(frozen=True, slots=True)
class AggregateLiteral:
    function: str  # "sum" | "count"
    elements: tuple[AggregateElement, ...]
    comparison: str
    bound: int
    negated: bool = False

    def __post_init__(self):
        if self.function not in ("sum", "count"):
            raise ValueError(f"unknown aggregate function {self.function!r}")
        if not self.elements:
            raise ValueError("aggregate element list is empty")
        if self.comparison not in COMPARISONS:
            raise ValueError(f"unknown comparison {self.comparison!r}")
        atoms = [e.atom for e in self.elements]
        if len(set(atoms)) != len(atoms):
            raise ValueError("duplicate atom within one aggregate")
        if self.function == "count" and any(e.weight != 1 for e in self.elements):
            raise ValueError("count elements must have weight 1")

    def variables(self) -> Iterator[str]:
        for e in self.elements:
            yield from e.atom.variables()

    def __str__(self) -> str:
        inner = "; ".join(str(e) for e in self.elements)
        text = f"#{self.function}{{{inner}}} {self.comparison} {self.bound}"
        return f"not {text}" if self.negated else text


BodyLiteral = Union[Literal, AggregateLiteral]


@dataclass(frozen=True, slots=True)
class ChoiceHead:
    atoms: tuple[Atom, ...]
    lower: int | None = None
    upper: int | None = None

    def __str__(self) -> str:
        inner = "; ".join(str(a) for a in self.atoms)
        parts = []
        if self.lower is not None:
            parts.append(str(self.lower))
        parts.append(f"{{{inner}}}")
        if self.upper is not None:
            parts.append(str(self.upper))
        return " ".join(parts)


@dataclass(frozen=True, slots=True)
class Rule:
    head: Union[tuple[Atom, ...], ChoiceHead]
    body: tuple[BodyLiteral, ...] = ()
    soft: bool = False

    @property
    def has_choice(self) -> bool:
        return isinstance(self.head, ChoiceHead)

    @property
    def head_atoms(self) -> tuple[Atom, ...]:
        return self.head.atoms if isinstance(self.head, ChoiceHead) else self.head

    @property
    def is_constraint(self) -> bool:
        return not self.has_choice and not self.head

    @property
    def is_fact(self) -> bool:
        return (
            not self.has_choice
            and len(self.head) == 1
            and not self.body
        )

    def __post_init__(self):
        if not self.has_choice and not self.head and not self.body:
            raise ValueError("rule with empty head and empty body")
        if self.soft and not self.is_fact:
            raise ValueError("only facts can be marked soft")

    @property
    def is_ground(self) -> bool:
        return not any(True for _ in self.variables())

    def variables(self) -> Iterator[str]:
        for a in self.head_atoms:
            yield from a.variables()
        for lit in self.body:
            if isinstance(lit, Literal):
                yield from lit.atom.variables()
            else:
                yield from lit.variables()

    def __str__(self) -> str:
        return pretty_rule(self)


@dataclass(frozen=True, slots=True)
class Span:
    line: int
    column: int


@dataclass(slots=True)
class Program:
    rules: tuple[Rule, ...]
    spans: tuple[Span, ...] = ()

    def __post_init__(self):
        if self.spans and len(self.spans) != len(self.rules):
            raise ValueError("span list does not match rule list")

    def __eq__(self, other: object) -> bool:
        # Source spans are location metadata, not program identity.
        if not isinstance(other, Program):
            return NotImplemented
        return self.rules == other.rules

    @property
    def facts(self) -> tuple[Rule, ...]:
        return tuple(r for r in self.rules if r.is_fact)

    @property
    def is_ground(self) -> bool:
        return all(r.is_ground and not r.has_choice for r in self.rules)


def pretty_rule(r: Rule) -> str:
    if isinstance(r.head, ChoiceHead):
        head = str(r.head)
    else:
        head = " | ".join(str(a) for a in r.head)
    body = ", ".join(str(lit) for lit in r.body)
    if not body:
        text = f"{head}."
    elif not head:
        text = f":- {body}."
    else:
        text = f"{head} :- {body}."
    if r.soft:
        text += " %soft"
    return text


def pretty_print(p: Program) -> str:
    """Render a program, one rule per line; inverse of parsing."""
    return "\n".join(pretty_rule(r) for r in p.rules) + ("\n" if p.rules else "")


def is_hidden_name(name: str) -> bool:
    return name.startswith(HIDDEN_PREFIX)

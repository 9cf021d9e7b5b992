"""Instantiation of programs over their Herbrand universe.

Grounding is naive Cartesian substitution per rule (safety guarantees
every variable is bound by a positive ordinary body literal), followed by
an optional relevance pass that drops instances whose positive body can
never be derived. Ground atoms get dense integer ids in first-occurrence
order, which fixes the deterministic ordering used everywhere downstream.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Union

from .aggregates import ConstraintAtom
from .choices import desugar_program
from .errors import CapacityError, DuplicateAggregateAtom, SafetyError
from .syntax import (
    AggregateElement,
    AggregateLiteral,
    Atom,
    Literal,
    Program,
    Rule,
    Term,
    is_hidden_name,
    pretty_rule,
)

DEFAULT_CAPACITY = 200_000
CAPACITY_ENV = "XPLAIN_CAPACITY"

# Upper bound on substitutions tried for one rule; guards against
# accidental |universe|^|vars| blow-up before the atom cap can trigger.
INSTANTIATION_BUDGET = 2_000_000


def configured_capacity(override: int | None = None) -> int:
    if override is not None:
        return override
    raw = os.environ.get(CAPACITY_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise CapacityError(f"{CAPACITY_ENV} is not an integer: {raw!r}") from None
    return DEFAULT_CAPACITY


class AtomTable:
    """Bijection between ground atoms and dense integer ids."""

    def __init__(self) -> None:
        self._atoms: list[Atom] = []
        self._ids: dict[Atom, int] = {}

    def add(self, atom: Atom) -> int:
        existing = self._ids.get(atom)
        if existing is not None:
            return existing
        new_id = len(self._atoms)
        self._atoms.append(atom)
        self._ids[atom] = new_id
        return new_id

    def get(self, atom: Atom) -> int | None:
        return self._ids.get(atom)

    def atom(self, atom_id: int) -> Atom:
        return self._atoms[atom_id]

    def text(self, atom_id: int) -> str:
        return str(self._atoms[atom_id])

    def is_hidden(self, atom_id: int) -> bool:
        return is_hidden_name(self._atoms[atom_id].predicate)

    @property
    def hidden_ids(self) -> frozenset[int]:
        return frozenset(i for i in range(len(self._atoms)) if self.is_hidden(i))

    def atoms(self) -> tuple[Atom, ...]:
        return tuple(self._atoms)

    def __len__(self) -> int:
        return len(self._atoms)

    def __contains__(self, atom: Atom) -> bool:
        return atom in self._ids


@dataclass(frozen=True, slots=True)
class GroundAggregate:
    constraint: ConstraintAtom
    negated: bool
    ast: AggregateLiteral


@dataclass(frozen=True, slots=True)
class GroundRule:
    head: tuple[int, ...]
    pos: tuple[int, ...]
    neg: tuple[int, ...]
    aggregates: tuple[GroundAggregate, ...]
    ast: Rule

    @property
    def text(self) -> str:
        return pretty_rule(self.ast)


@dataclass(slots=True)
class GroundProgram:
    rules: tuple[GroundRule, ...]
    table: AtomTable

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroundProgram):
            return NotImplemented
        return (
            tuple(r.ast for r in self.rules) == tuple(r.ast for r in other.rules)
            and self.table.atoms() == other.table.atoms()
        )

    @property
    def base_size(self) -> int:
        return len(self.table)

    def to_program(self) -> Program:
        return Program(tuple(r.ast for r in self.rules))


def herbrand_universe(program: Program) -> frozenset[Term]:
    """Constants and integers occurring as atom arguments in the program."""
    terms: set[Term] = set()
    for rule in program.rules:
        for atom in _rule_atoms(rule):
            for t in atom.args:
                if t.is_ground:
                    terms.add(t)
    return frozenset(terms)


def _rule_atoms(rule: Rule) -> Iterable[Atom]:
    yield from rule.head_atoms
    for lit in rule.body:
        if isinstance(lit, Literal):
            yield lit.atom
        else:
            for e in lit.elements:
                yield e.atom


def check_safety(rule: Rule) -> None:
    """Every rule variable must occur in a positive, non-aggregate body literal."""
    bound: set[str] = set()
    for lit in rule.body:
        if isinstance(lit, Literal) and not lit.negated:
            bound.update(lit.atom.variables())
    for name in rule.variables():
        if name not in bound:
            raise SafetyError(name, pretty_rule(rule))


def _term_key(t: Term) -> tuple[int, str]:
    if t.kind == "int":
        return (0, f"{t.value:020d}" if t.value >= 0 else f"-{-t.value:019d}")
    return (1, str(t.value))


def _substitute_atom(atom: Atom, theta: dict[str, Term]) -> Atom:
    if atom.is_ground:
        return atom
    return Atom(
        atom.predicate,
        tuple(theta[t.value] if t.kind == "var" else t for t in atom.args),
    )


def _instantiate_rule(rule: Rule, theta: dict[str, Term]) -> Rule:
    head = tuple(_substitute_atom(a, theta) for a in rule.head_atoms)
    body: list = []
    for lit in rule.body:
        if isinstance(lit, Literal):
            body.append(Literal(_substitute_atom(lit.atom, theta), lit.negated))
        else:
            elements: list[AggregateElement] = []
            weights: dict[Atom, int] = {}
            for e in lit.elements:
                atom = _substitute_atom(e.atom, theta)
                known = weights.get(atom)
                if known is None:
                    weights[atom] = e.weight
                    elements.append(AggregateElement(e.weight, atom))
                elif known != e.weight:
                    raise DuplicateAggregateAtom(
                        f"elements {known}:{atom} and {e.weight}:{atom} collapse onto "
                        f"one atom in {pretty_rule(rule)}"
                    )
            body.append(
                AggregateLiteral(lit.function, tuple(elements), lit.comparison, lit.bound, lit.negated)
            )
    return Rule(head, tuple(body), rule.soft)


def _ground_instances(program: Program, universe: frozenset[Term]) -> list[Rule]:
    ordered_universe = sorted(universe, key=_term_key)
    seen: set[Rule] = set()
    out: list[Rule] = []
    for rule in program.rules:
        variables = sorted(set(rule.variables()))
        if variables and not ordered_universe:
            continue
        if variables and len(ordered_universe) ** len(variables) > INSTANTIATION_BUDGET:
            raise CapacityError(
                f"rule needs more than {INSTANTIATION_BUDGET} substitutions: {pretty_rule(rule)}"
            )
        for values in product(ordered_universe, repeat=len(variables)):
            theta = dict(zip(variables, values))
            instance = _instantiate_rule(rule, theta)
            if instance not in seen:
                seen.add(instance)
                out.append(instance)
    return out


def _possibly_derivable(instances: list[Rule]) -> set[Atom]:
    derivable: set[Atom] = set()
    changed = True
    while changed:
        changed = False
        for rule in instances:
            positive = [
                lit.atom for lit in rule.body if isinstance(lit, Literal) and not lit.negated
            ]
            if all(a in derivable for a in positive):
                for head_atom in rule.head_atoms:
                    if head_atom not in derivable:
                        derivable.add(head_atom)
                        changed = True
    return derivable


def _index_instances(instances: list[Rule], capacity: int) -> GroundProgram:
    table = AtomTable()
    rules: list[GroundRule] = []
    for rule in instances:
        head = tuple(table.add(a) for a in rule.head_atoms)
        pos: list[int] = []
        neg: list[int] = []
        aggregates: list[GroundAggregate] = []
        for lit in rule.body:
            if isinstance(lit, Literal):
                (neg if lit.negated else pos).append(table.add(lit.atom))
            else:
                domain = tuple((table.add(e.atom), e.weight) for e in lit.elements)
                constraint = ConstraintAtom(domain, lit.function, lit.comparison, lit.bound)
                aggregates.append(GroundAggregate(constraint, lit.negated, lit))
        if len(table) > capacity:
            raise CapacityError(
                f"ground atom count exceeded the capacity of {capacity} "
                f"(override via {CAPACITY_ENV})"
            )
        rules.append(GroundRule(head, tuple(pos), tuple(neg), tuple(aggregates), rule))
    return GroundProgram(tuple(rules), table)


def ground(
    program: Union[Program, GroundProgram],
    *,
    simplify: bool = False,
    capacity: int | None = None,
) -> GroundProgram:
    """Instantiate all rules over the Herbrand universe.

    With ``simplify`` the relevance pass removes instances whose positive
    ordinary body mentions an atom no rule chain can derive; this preserves
    answer sets but may shrink the Herbrand base. Raises SafetyError for
    unsafe rules and CapacityError past the ground-atom cap.
    """
    if isinstance(program, GroundProgram):
        program = program.to_program()
    program = desugar_program(program)
    for rule in program.rules:
        check_safety(rule)
    cap = configured_capacity(capacity)
    instances = _ground_instances(program, herbrand_universe(program))
    if simplify:
        derivable = _possibly_derivable(instances)
        instances = [
            rule
            for rule in instances
            if all(
                lit.atom in derivable
                for lit in rule.body
                if isinstance(lit, Literal) and not lit.negated
            )
        ]
    return _index_instances(instances, cap)

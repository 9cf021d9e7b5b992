"""Rewriting of choice rules into disjunctive rules plus count constraints.

``{a; b} :- body`` becomes one disjunction ``a | xp__not_a :- body`` per
choice atom, where the complement atom is hidden (reserved prefix, filtered
from displayed models). Bounds become constraints over a ``#count``
aggregate on the choice atoms, guarded by the original body. Restricted to
visible atoms, the answer sets of the rewriting are exactly the subsets
allowed by the choice.
"""

from __future__ import annotations

from .errors import BoundError
from .syntax import (
    AggregateElement,
    AggregateLiteral,
    Atom,
    ChoiceHead,
    HIDDEN_PREFIX,
    Program,
    Rule,
    Span,
)


def complement_atom(atom: Atom) -> Atom:
    return Atom(f"{HIDDEN_PREFIX}not_{atom.predicate}", atom.args)


def desugar_choice(rule: Rule) -> list[Rule]:
    """Rewrite one choice rule; raises BoundError when lower > upper."""
    if not isinstance(rule.head, ChoiceHead):
        raise ValueError("rule has no choice head")
    head = rule.head
    if head.lower is not None and head.upper is not None and head.lower > head.upper:
        raise BoundError(f"choice lower bound {head.lower} exceeds upper bound {head.upper}")
    out = [Rule((atom, complement_atom(atom)), rule.body) for atom in head.atoms]
    elements = tuple(AggregateElement(1, atom) for atom in head.atoms)
    if head.lower is not None:
        guard = AggregateLiteral("count", elements, "<", head.lower)
        out.append(Rule((), rule.body + (guard,)))
    if head.upper is not None:
        guard = AggregateLiteral("count", elements, ">", head.upper)
        out.append(Rule((), rule.body + (guard,)))
    return out


def desugar_program(program: Program) -> Program:
    """Rewrite every choice rule, keeping other rules untouched."""
    if not any(r.has_choice for r in program.rules):
        return program
    rules: list[Rule] = []
    spans: list[Span] = []
    source_spans = program.spans or tuple(Span(0, 0) for _ in program.rules)
    for rule, span in zip(program.rules, source_spans):
        if rule.has_choice:
            for rewritten in desugar_choice(rule):
                rules.append(rewritten)
                spans.append(span)
        else:
            rules.append(rule)
            spans.append(span)
    return Program(tuple(rules), tuple(spans))

import random
from itertools import product

import pytest

from xplain.errors import CapacityError, DuplicateAggregateAtom, SafetyError
from xplain.ground import AtomTable, check_safety, ground, herbrand_universe
from xplain.parser import parse_program
from xplain.stable import brute_force_answer_sets
from xplain.syntax import Atom, Literal, Program, Rule, const, num, pretty_print

import randprog


def test_universe_constants_and_integers():
    program = parse_program("q(1). q(2). p(X) :- q(X).")
    assert {t.value for t in herbrand_universe(program)} == {1, 2}


def test_universe_empty_without_constants():
    assert herbrand_universe(parse_program("a :- b.")) == frozenset()


def test_universe_of_bug_program(bug_program):
    values = {t.value for t in herbrand_universe(parse_program(bug_program))}
    assert values == {6, 2, 5, "beetle", "fly"}


def test_safety_positive_binding():
    check_safety(parse_program("p(X) :- q(X).").rules[0])


def test_safety_negative_only_is_unsafe():
    rule = Rule((Atom("p", (const("c"),)),), (Literal(Atom("q", (num(1),)), True),))
    check_safety(rule)  # ground negated literal is fine
    with pytest.raises(SafetyError) as err:
        check_safety(parse_program("q(1). p(X) :- not q(X).").rules[1])
    assert err.value.variable == "X"


def test_safety_aggregate_does_not_bind():
    with pytest.raises(SafetyError) as err:
        check_safety(parse_program("q(1). p :- #sum{1:q(X)} > 0.").rules[1])
    assert err.value.variable == "X"


def test_ground_simple_instantiation():
    gp = ground(parse_program("q(1). q(2). p(X) :- q(X)."))
    texts = sorted(r.text for r in gp.rules)
    assert texts == ["p(1) :- q(1).", "p(2) :- q(2).", "q(1).", "q(2)."]


def test_ground_identity_on_ground_input():
    program = parse_program("a :- not b. b :- c.")
    gp = ground(program)
    assert gp.to_program() == program


def test_ground_idempotent():
    gp = ground(parse_program("q(1). q(2). p(X) :- q(X), not r(X)."))
    assert ground(gp) == gp


def test_ground_propagates_safety_error():
    with pytest.raises(SafetyError):
        ground(parse_program("q(1). p(X) :- not q(X)."))


def test_capacity_error():
    with pytest.raises(CapacityError):
        ground(parse_program("q(1). q(2). q(3). p(X) :- q(X)."), capacity=3)


def test_capacity_env_override(monkeypatch):
    monkeypatch.setenv("XPLAIN_CAPACITY", "2")
    with pytest.raises(CapacityError):
        ground(parse_program("q(1). q(2). q(3). p(X) :- q(X)."))


def test_aggregate_grounded_per_substitution():
    gp = ground(parse_program("q(1). q(2). p(X) :- q(X), #sum{1:r(X)} < 1."))
    aggregate_rules = [r for r in gp.rules if r.aggregates]
    assert len(aggregate_rules) == 2
    domains = sorted(str(r.aggregates[0].ast) for r in aggregate_rules)
    assert domains == ["#sum{1:r(1)} < 1", "#sum{1:r(2)} < 1"]


def test_duplicate_aggregate_atom_merges_or_errors():
    # identical weight: elements collapse to one
    gp = ground(parse_program("q(1). p :- q(X), #count{r(X); r(1)} >= 1."))
    agg = next(r for r in gp.rules if r.aggregates).aggregates[0]
    assert len(agg.constraint.domain) == 1
    # conflicting weights on the same atom are rejected
    with pytest.raises(DuplicateAggregateAtom):
        ground(parse_program("q(1). p :- q(X), #sum{1:r(X); 2:r(1)} > 0."))


def test_atom_table_bijection():
    gp = ground(parse_program("q(1). q(2). p(X) :- q(X), not r(X)."))
    table = gp.table
    for atom_id in range(len(table)):
        assert table.get(table.atom(atom_id)) == atom_id
    texts = [table.text(i) for i in range(len(table))]
    assert len(set(texts)) == len(texts)


def test_hidden_atoms_marked():
    gp = ground(parse_program("{a}."))
    hidden = gp.table.hidden_ids
    assert len(hidden) == 1
    assert all(gp.table.text(i).startswith("xp__") for i in hidden)


def test_simplify_drops_underivable_bodies():
    gp = ground(parse_program("a :- b. c."), simplify=True)
    assert [r.text for r in gp.rules] == ["c."]
    # answer sets unchanged
    plain = ground(parse_program("a :- b. c."))
    names = lambda g, m: frozenset(g.table.text(a) for a in m)
    assert {names(gp, m) for m in brute_force_answer_sets(gp)} == {
        names(plain, m) for m in brute_force_answer_sets(plain)
    }


def _manual_instantiation(program: Program) -> Program:
    """Independent naive substitution used as the grounding oracle."""
    constants = sorted(
        {t for r in program.rules for a in _atoms_of(r) for t in a.args if t.is_ground},
        key=str,
    )
    rules = []
    for rule in program.rules:
        variables = sorted(set(rule.variables()))
        for values in product(constants, repeat=len(variables)):
            theta = dict(zip(variables, values))
            def subst(atom: Atom) -> Atom:
                return Atom(
                    atom.predicate,
                    tuple(theta[t.value] if t.kind == "var" else t for t in atom.args),
                )
            head = tuple(subst(a) for a in rule.head)
            body = tuple(Literal(subst(l.atom), l.negated) for l in rule.body)
            rules.append(Rule(head, body))
    return Program(tuple(dict.fromkeys(rules)))


def _atoms_of(rule: Rule):
    yield from rule.head_atoms
    for lit in rule.body:
        if isinstance(lit, Literal):
            yield lit.atom


def test_grounding_preserves_answer_sets_against_manual_oracle():
    rng = random.Random(41)
    checked = 0
    for _ in range(60):
        text = randprog.random_datalog_program(rng)
        program = parse_program(text)
        gp = ground(program)
        if gp.base_size > 18:
            continue
        manual = ground(_manual_instantiation(program))
        ours = {
            frozenset(gp.table.text(a) for a in m) for m in brute_force_answer_sets(gp)
        }
        theirs = {
            frozenset(manual.table.text(a) for a in m)
            for m in brute_force_answer_sets(manual)
        }
        assert ours == theirs, text
        checked += 1
    assert checked >= 40


def test_ground_program_dump_reparses():
    gp = ground(parse_program("q(1). q(2). p(X) :- q(X), not r(X)."))
    dumped = pretty_print(gp.to_program())
    assert parse_program(dumped) == gp.to_program()

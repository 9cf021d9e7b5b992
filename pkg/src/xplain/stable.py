"""Answer-set semantics: reducts, model checks, enumeration, consequences.

Two independent routes compute answer sets. `brute_force_answer_sets`
applies the definitional check (`is_answer_set`, written directly from
the reduct definitions below) to every subset of the Herbrand base and is
the reference oracle. `enumerate_answer_sets` runs a branch-and-propagate
search whose total candidates are verified by the bitmask kernel; both
routes must agree wherever both run.

Aggregate programs use the satisfied-body reduct: keep exactly the rules
whose full body holds under the candidate, then require the candidate to
be a minimal model of that reduct. On aggregate-free programs its verdicts
coincide with the classical reduct that deletes rules with a true negated
body atom and strips negation from the rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Iterable

from . import kernel
from .aggregates import evaluate
from .errors import AggregatePresent, CapacityError, NoAnswerSets, NotAModel
from .ground import GroundProgram, GroundRule
from .syntax import Literal, Rule

BRUTE_FORCE_ATOM_LIMIT = 20
DEFAULT_SEARCH_BUDGET = 5_000_000

Interpretation = frozenset[int]


@dataclass(slots=True)
class ReductProgram:
    """Negation- and aggregate-free remainder of a classical reduct."""

    rules: tuple[GroundRule, ...]
    table: object

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReductProgram):
            return NotImplemented
        return tuple(r.ast for r in self.rules) == tuple(r.ast for r in other.rules)


def body_satisfied(interpretation: AbstractSet[int], rule: GroundRule) -> bool:
    if any(a not in interpretation for a in rule.pos):
        return False
    if any(a in interpretation for a in rule.neg):
        return False
    for agg in rule.aggregates:
        if evaluate(agg.constraint, interpretation) == agg.negated:
            return False
    return True


def satisfies(interpretation: AbstractSet[int], rule: GroundRule) -> bool:
    """Classical satisfaction: body holds only if some head atom is in."""
    if not body_satisfied(interpretation, rule):
        return True
    return any(a in interpretation for a in rule.head)


def is_model(program: GroundProgram | ReductProgram, interpretation: AbstractSet[int]) -> bool:
    return all(satisfies(interpretation, r) for r in program.rules)


def gl_reduct(program: GroundProgram, interpretation: AbstractSet[int]) -> ReductProgram:
    """Delete rules with a true negated body atom; strip negation elsewhere.

    Only defined for aggregate-free programs; aggregate programs go
    through `flp_reduct`.
    """
    for rule in program.rules:
        if rule.aggregates:
            raise AggregatePresent(
                "classical reduct undefined for aggregate rules; use flp_reduct"
            )
    kept: list[GroundRule] = []
    for rule in program.rules:
        if any(a in interpretation for a in rule.neg):
            continue
        if rule.neg:
            positive_body = tuple(
                lit for lit in rule.ast.body if isinstance(lit, Literal) and not lit.negated
            )
            if rule.ast.head or positive_body:
                stripped_ast = Rule(rule.ast.head, positive_body, rule.ast.soft)
            else:
                # an always-violated constraint has no surface form; keep the
                # original text for display, the id-level rule is stripped
                stripped_ast = rule.ast
        else:
            stripped_ast = rule.ast
        kept.append(GroundRule(rule.head, rule.pos, (), (), stripped_ast))
    return ReductProgram(tuple(kept), program.table)


def flp_reduct(program: GroundProgram, interpretation: AbstractSet[int]) -> GroundProgram:
    """Keep exactly the rules whose entire body the interpretation satisfies."""
    kept = tuple(r for r in program.rules if body_satisfied(interpretation, r))
    return GroundProgram(kept, program.table)


def _has_proper_submodel(program: GroundProgram | ReductProgram, interpretation: AbstractSet[int]) -> bool:
    atoms = sorted(interpretation)
    k = len(atoms)
    if k == 0:
        return False
    if k > 16:
        # cheap single-removal filter first, then a propagation-guided
        # subset search; raw 2^k enumeration would not scale here
        for a in atoms:
            if is_model(program, interpretation - {a}):
                return True
        bits = 0
        for a in interpretation:
            bits |= 1 << a
        return kernel._pure.has_proper_submodel(kernel.pack_program(program), bits)
    for mask in range((1 << k) - 1):
        subset = frozenset(atoms[i] for i in range(k) if mask >> i & 1)
        if is_model(program, subset):
            return True
    return False


def is_minimal_model(program: GroundProgram | ReductProgram, interpretation: AbstractSet[int]) -> bool:
    """True iff no proper subset of a model is itself a model."""
    if not is_model(program, interpretation):
        raise NotAModel("interpretation does not satisfy the program")
    return not _has_proper_submodel(program, interpretation)


def is_answer_set(program: GroundProgram, interpretation: AbstractSet[int]) -> bool:
    if any(a >= program.base_size or a < 0 for a in interpretation):
        return False
    reduct = flp_reduct(program, interpretation)
    if not is_model(reduct, interpretation):
        return False
    return not _has_proper_submodel(reduct, interpretation)


def least_model(program: GroundProgram) -> Interpretation:
    """Fixpoint of rule application for positive normal programs."""
    for rule in program.rules:
        if rule.neg or rule.aggregates or len(rule.head) != 1:
            raise ValueError("least model defined for positive normal programs only")
    derived: set[int] = set()
    changed = True
    while changed:
        changed = False
        for rule in program.rules:
            if all(a in derived for a in rule.pos) and rule.head[0] not in derived:
                derived.add(rule.head[0])
                changed = True
    return frozenset(derived)


def brute_force_answer_sets(program: GroundProgram) -> list[Interpretation]:
    """Reference oracle: the definitional check on every subset of the base."""
    n = program.base_size
    if n > BRUTE_FORCE_ATOM_LIMIT:
        raise CapacityError(
            f"brute-force oracle limited to {BRUTE_FORCE_ATOM_LIMIT} atoms, got {n}"
        )
    out: list[Interpretation] = []
    for mask in range(1 << n):
        interpretation = frozenset(i for i in range(n) if mask >> i & 1)
        if is_answer_set(program, interpretation):
            out.append(interpretation)
    return out


# --- search-based enumeration ---------------------------------------------


class _StopSearch(Exception):
    pass


class _Searcher:
    """Branch on the highest undecided atom, false branch first, so total
    candidates appear in ascending bitmask order; propagate necessary
    conditions of model-hood and supportedness to prune; verify each total
    candidate with the kernel's definitional check."""

    def __init__(self, program: GroundProgram, limit: int | None, budget: int):
        self.program = program
        self.n = program.base_size
        self.kernel = kernel.compile_program(program)
        self.limit = limit
        self.budget = budget
        self.steps = 0
        self.found: list[int] = []
        self.packed = kernel.pack_program(program)
        self.head_rules: list[list[int]] = [[] for _ in range(self.n)]
        for idx, rule in enumerate(program.rules):
            for a in rule.head:
                self.head_rules[a].append(idx)

    def run(self) -> list[int]:
        try:
            state = self._propagate(0, 0)
            if state is not None:
                self._branch(*state)
        except _StopSearch:
            pass
        return self.found

    def _charge(self, amount: int = 1) -> None:
        self.steps += amount
        if self.steps > self.budget:
            raise CapacityError(f"enumeration budget of {self.budget} steps exhausted")

    def _body_status(self, rule_index: int, true_mask: int, false_mask: int) -> bool | None:
        return kernel._pure.body_status(self.packed, rule_index, true_mask, false_mask)

    def _propagate(self, true_mask: int, false_mask: int) -> tuple[int, int] | None:
        packed = self.packed
        changed = True
        while changed:
            changed = False
            self._charge(len(self.program.rules) + self.n)
            for rule_index in range(len(self.program.rules)):
                if self._body_status(rule_index, true_mask, false_mask) is not True:
                    continue
                head = packed["heads"][rule_index]
                if head & true_mask:
                    continue
                open_head = head & ~false_mask
                if open_head == 0:
                    return None  # fired rule with no satisfiable head atom
                if open_head.bit_count() == 1:
                    true_mask |= open_head
                    changed = True
            for atom in range(self.n):
                bit = 1 << atom
                if bit & (true_mask | false_mask) and not bit & true_mask:
                    continue
                alive = any(
                    self._body_status(r, true_mask, false_mask) is not False
                    for r in self.head_rules[atom]
                )
                if alive:
                    continue
                # no rule can ever derive the atom
                if bit & true_mask:
                    return None
                if not bit & false_mask:
                    false_mask |= bit
                    changed = True
        return true_mask, false_mask

    def _branch(self, true_mask: int, false_mask: int) -> None:
        undecided = ~(true_mask | false_mask) & ((1 << self.n) - 1)
        if undecided == 0:
            self._charge()
            if self.kernel.is_answer_set(true_mask):
                self.found.append(true_mask)
                if self.limit is not None and len(self.found) >= self.limit:
                    raise _StopSearch
            return
        # highest undecided atom, false branch first: candidates surface in
        # ascending bitmask order, so `limit` can cut the search early
        bit = 1 << (undecided.bit_length() - 1)
        state = self._propagate(true_mask, false_mask | bit)
        if state is not None:
            self._branch(*state)
        state = self._propagate(true_mask | bit, false_mask)
        if state is not None:
            self._branch(*state)


def enumerate_answer_sets(
    program: GroundProgram,
    limit: int | None = None,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> list[Interpretation]:
    """All (or the first `limit`) answer sets in ascending bitmask order."""
    if limit is not None and limit <= 0:
        return []
    masks = _Searcher(program, limit, budget).run()
    return [frozenset(i for i in range(program.base_size) if m >> i & 1) for m in masks]


def brave_consequences(program: GroundProgram) -> frozenset[int]:
    """Atoms true in at least one answer set."""
    models = enumerate_answer_sets(program)
    out: set[int] = set()
    for m in models:
        out |= m
    return frozenset(out)


def cautious_consequences(program: GroundProgram) -> frozenset[int]:
    """Atoms true in every answer set; error when there are none."""
    models = enumerate_answer_sets(program)
    if not models:
        raise NoAnswerSets("cautious consequences undefined without answer sets")
    out = set(models[0])
    for m in models[1:]:
        out &= m
    return frozenset(out)


def atoms_text(program: GroundProgram, interpretation: Iterable[int]) -> list[str]:
    """Atom names in id order, the display order used everywhere."""
    return [program.table.text(a) for a in sorted(interpretation)]

"""Answer-set existence explained through minimal fact subsets.

The program splits into hard rules (always kept) and soft facts (eligible
for removal). A minimal inconsistent subset is a smallest-by-inclusion
soft set that already breaks the hard rules; a minimal correction set is
a smallest-by-inclusion removal that restores consistency.

Consistency of an answer-set program is not monotone in its facts, so no
subset or superset verdict is ever assumed: every candidate subset is
checked by an actual solver call, and the size-ascending sweep only skips
supersets of already-minimal results, which is sound regardless of
monotonicity.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .contrastive import atom_key
from .errors import HardCoreInconsistent
from .ground import GroundProgram, ground
from .stable import enumerate_answer_sets
from .syntax import Atom, Program, Rule


@dataclass(frozen=True, slots=True)
class SoftPartition:
    hard: Program
    soft: tuple[Atom, ...]

    def __post_init__(self):
        if len(set(self.soft)) != len(self.soft):
            raise ValueError("soft facts repeat")


def soft_partition(program: Program, predicates: Sequence[str] | None = None) -> SoftPartition:
    """Split on %soft markers, or on a predicate list when given."""
    soft: list[Atom] = []
    hard: list[Rule] = []
    chosen = set(predicates) if predicates is not None else None
    for rule in program.rules:
        is_soft = (
            rule.is_fact
            and (rule.head[0].predicate in chosen if chosen is not None else rule.soft)
        )
        if is_soft and rule.head[0] not in soft:
            soft.append(rule.head[0])
        elif not is_soft:
            hard.append(Rule(rule.head, rule.body))
    return SoftPartition(Program(tuple(hard)), tuple(sorted(soft, key=atom_key)))


def is_consistent(program: Program | GroundProgram) -> bool:
    """True iff the program has at least one answer set."""
    gp = program if isinstance(program, GroundProgram) else ground(program)
    return bool(enumerate_answer_sets(gp, limit=1))


def _consistent_with(partition: SoftPartition, kept: Iterable[Atom]) -> bool:
    rules = tuple(partition.hard.rules) + tuple(
        Rule((f,)) for f in sorted(kept, key=atom_key)
    )
    return is_consistent(Program(rules))


def _require_consistent_core(partition: SoftPartition) -> None:
    if not _consistent_with(partition, ()):
        raise HardCoreInconsistent("the hard rules alone have no answer set")


def _minimal_subsets(
    partition: SoftPartition, k: int | None, property_holds
) -> list[frozenset[Atom]]:
    ordered = sorted(partition.soft, key=atom_key)
    found: list[frozenset[Atom]] = []
    for size in range(len(ordered) + 1):
        for chosen in combinations(ordered, size):
            subset = frozenset(chosen)
            if any(prior <= subset for prior in found):
                continue
            if property_holds(subset):
                found.append(subset)
                if k is not None and len(found) >= k:
                    return found
    return found


def minimal_correction_sets(partition: SoftPartition, k: int | None = None) -> list[frozenset[Atom]]:
    """Minimal soft-fact removals restoring consistency, size then lexicographic."""
    _require_consistent_core(partition)
    soft_set = frozenset(partition.soft)

    def restores(removal: frozenset[Atom]) -> bool:
        return _consistent_with(partition, soft_set - removal)

    return _minimal_subsets(partition, k, restores)


def minimal_inconsistent_subsets(partition: SoftPartition, k: int | None = None) -> list[frozenset[Atom]]:
    """Minimal soft-fact subsets that break the hard rules, size then lexicographic."""
    _require_consistent_core(partition)

    def breaks(subset: frozenset[Atom]) -> bool:
        return not _consistent_with(partition, subset)

    return _minimal_subsets(partition, k, breaks)

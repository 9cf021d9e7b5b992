"""Contrastive explanations over perturbed fact bases, plus abduction.

A fact space fixes which ground facts may appear at all and partitions
them into families with optional exactly-n cardinality constraints (for
example exactly one eyes(_) fact). A contrastive query names a property
that should start or stop holding; the answer is a valid fact base F'
of minimal distance from the current one, searched exhaustively over the
family-respecting combinations, so minimality is exact by construction.
Distance defaults to the size of the symmetric difference and can be
swapped for a problem-specific callable.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import AbstractSet, Callable, Iterable, Sequence

from .errors import BaselineViolated, CapacityError, NoContrast, ParseError
from .ground import GroundProgram, ground
from .parser import parse_ground_atom
from .stable import brave_consequences, enumerate_answer_sets, is_answer_set
from .syntax import Atom, Program, Rule

MODES = ("not-an-answer-set", "foil-becomes-brave", "fact-no-longer-brave")

CANDIDATE_LIMIT = 200_000


def atom_key(atom: Atom) -> str:
    return str(atom)


@dataclass(frozen=True, slots=True)
class FactFamily:
    name: str
    facts: tuple[Atom, ...]
    exactly: int | None = None

    def __post_init__(self):
        if not self.facts:
            raise ValueError(f"family {self.name!r} is empty")
        if self.exactly is not None and not 0 <= self.exactly <= len(self.facts):
            raise ValueError(f"family {self.name!r} cannot select exactly {self.exactly}")


@dataclass(frozen=True, slots=True)
class FactSpace:
    families: tuple[FactFamily, ...]

    def __post_init__(self):
        seen: set[Atom] = set()
        for family in self.families:
            for fact in family.facts:
                if fact in seen:
                    raise ValueError(f"fact {fact} belongs to two families")
                seen.add(fact)

    @property
    def candidates(self) -> frozenset[Atom]:
        return frozenset(f for family in self.families for f in family.facts)

    def respects(self, facts: AbstractSet[Atom]) -> bool:
        if not facts <= self.candidates:
            return False
        for family in self.families:
            if family.exactly is not None:
                if sum(1 for f in family.facts if f in facts) != family.exactly:
                    return False
        return True

    def valid_bases(self) -> Iterable[frozenset[Atom]]:
        """Every family-respecting fact base, in a deterministic order."""
        per_family: list[list[tuple[Atom, ...]]] = []
        total = 1
        for family in self.families:
            facts = sorted(family.facts, key=atom_key)
            if family.exactly is not None:
                options = list(combinations(facts, family.exactly))
            else:
                options = [c for size in range(len(facts) + 1) for c in combinations(facts, size)]
            per_family.append(options)
            total *= len(options)
            if total > CANDIDATE_LIMIT:
                raise CapacityError(
                    f"fact space spans more than {CANDIDATE_LIMIT} candidate bases"
                )
        for combo in product(*per_family):
            yield frozenset(f for chosen in combo for f in chosen)


def parse_fact_space(text: str) -> FactSpace:
    """Space file: one candidate fact per line, family blocks introduced by
    ``family <name> exactly <n>:``; facts before any family are loose
    (unconstrained singleton families)."""
    families: list[FactFamily] = []
    current_name: str | None = None
    current_exactly: int | None = None
    current_facts: list[Atom] = []

    def close_family() -> None:
        nonlocal current_name, current_exactly, current_facts
        if current_name is not None:
            families.append(FactFamily(current_name, tuple(current_facts), current_exactly))
        current_name, current_exactly, current_facts = None, None, []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        if line.startswith("family "):
            close_family()
            parts = line.rstrip(":").split()
            if len(parts) != 4 or parts[2] != "exactly":
                raise ParseError("expected 'family <name> exactly <n>:'", line_no, 1)
            try:
                bound = int(parts[3])
            except ValueError:
                raise ParseError(f"family bound {parts[3]!r} is not an integer", line_no, 1) from None
            current_name, current_exactly = parts[1], bound
            continue
        fact = parse_ground_atom(line.rstrip("."))
        if current_name is None:
            families.append(FactFamily(str(fact), (fact,), None))
        else:
            current_facts.append(fact)
    close_family()
    if not families:
        raise ParseError("fact space declares no candidates", 1, 1)
    return FactSpace(tuple(families))


@dataclass(frozen=True, slots=True)
class ContrastiveQuery:
    mode: str
    target: frozenset[Atom] | Atom

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown contrast mode {self.mode!r}")
        if self.mode == "not-an-answer-set":
            if not isinstance(self.target, frozenset):
                raise ValueError("mode not-an-answer-set needs an interpretation target")
        elif not isinstance(self.target, Atom):
            raise ValueError(f"mode {self.mode} needs an atom target")


@dataclass(frozen=True, slots=True)
class ContrastiveExplanation:
    new_facts: frozenset[Atom]
    added: frozenset[Atom]
    removed: frozenset[Atom]
    distance: int


def _with_facts(program: Program, facts: AbstractSet[Atom]) -> GroundProgram:
    rules = tuple(program.rules) + tuple(
        Rule((f,)) for f in sorted(facts, key=atom_key)
    )
    return ground(Program(rules))


def _query_holds(program: Program, facts: AbstractSet[Atom], query: ContrastiveQuery) -> bool:
    gp = _with_facts(program, facts)
    if query.mode == "not-an-answer-set":
        ids = [gp.table.get(a) for a in query.target]
        if any(i is None for i in ids):
            return True  # the interpretation mentions atoms outside the base
        return not is_answer_set(gp, frozenset(ids))
    atom_id = gp.table.get(query.target)
    bravely_true = atom_id is not None and atom_id in brave_consequences(gp)
    if query.mode == "foil-becomes-brave":
        return bravely_true
    return not bravely_true


def _check_preconditions(
    program: Program, facts: frozenset[Atom], query: ContrastiveQuery, space: FactSpace
) -> None:
    if not facts <= space.candidates:
        outside = sorted(facts - space.candidates, key=atom_key)
        raise BaselineViolated(f"current facts outside the space: {', '.join(map(str, outside))}")
    if not space.respects(facts):
        raise BaselineViolated("current fact base violates a family constraint")
    if query.mode == "not-an-answer-set" and _query_holds(program, facts, query):
        raise BaselineViolated("the target interpretation is not an answer set to begin with")


def _search(
    program: Program,
    facts: frozenset[Atom],
    query: ContrastiveQuery,
    space: FactSpace,
    k: int | None,
    distance: Callable[[frozenset[Atom], frozenset[Atom]], int] | None,
) -> list[ContrastiveExplanation]:
    _check_preconditions(program, facts, query, space)

    def measure(base: frozenset[Atom]) -> int:
        added = base - facts
        removed = facts - base
        if distance is not None:
            return distance(added, removed)
        return len(added) + len(removed)

    def tie_key(base: frozenset[Atom]) -> tuple:
        return (
            tuple(sorted(map(atom_key, base - facts))),
            tuple(sorted(map(atom_key, facts - base))),
        )

    ranked = sorted(space.valid_bases(), key=lambda b: (measure(b), tie_key(b)))
    hits: list[ContrastiveExplanation] = []
    best: int | None = None
    for base in ranked:
        d = measure(base)
        if best is not None and d > best:
            break
        if _query_holds(program, base, query):
            best = d
            hits.append(ContrastiveExplanation(base, base - facts, facts - base, d))
            if k is not None and len(hits) >= k:
                break
    return hits


def contrast(
    program: Program,
    facts: AbstractSet[Atom],
    query: ContrastiveQuery,
    space: FactSpace,
    distance: Callable[[frozenset[Atom], frozenset[Atom]], int] | None = None,
) -> ContrastiveExplanation:
    """Minimal family-respecting perturbation making the query property hold.

    Raises NoContrast when no valid base flips the property and
    BaselineViolated when the current base fails the query's precondition.
    """
    hits = _search(program, frozenset(facts), query, space, 1, distance)
    if not hits:
        raise NoContrast("no fact base in the space makes the property hold")
    return hits[0]


def contrast_all(
    program: Program,
    facts: AbstractSet[Atom],
    query: ContrastiveQuery,
    space: FactSpace,
    k: int,
    distance: Callable[[frozenset[Atom], frozenset[Atom]], int] | None = None,
) -> list[ContrastiveExplanation]:
    """Up to k distinct minimum-distance explanations; empty when none exist."""
    if k < 1:
        raise ValueError("k must be positive")
    return _search(program, frozenset(facts), query, space, k, distance)


def abduce(
    program: Program,
    observation: Atom,
    abducibles: AbstractSet[Atom] | Sequence[Atom],
) -> list[frozenset[Atom]]:
    """All minimal abducible subsets whose addition makes the observation
    bravely true while keeping the program consistent."""
    pool = sorted(set(abducibles), key=atom_key)
    found: list[frozenset[Atom]] = []
    for size in range(len(pool) + 1):
        for chosen in combinations(pool, size):
            delta = frozenset(chosen)
            if any(prior <= delta for prior in found):
                continue
            gp = _with_facts(program, delta)
            models = enumerate_answer_sets(gp)
            if not models:
                continue
            atom_id = gp.table.get(observation)
            if atom_id is not None and any(atom_id in m for m in models):
                found.append(delta)
    return found

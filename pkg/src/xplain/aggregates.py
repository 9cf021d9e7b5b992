"""Abstract constraint atoms and their satisfaction/violation witnesses.

A constraint atom is a finite weighted domain of ground atoms together
with a comparison against a bound; its abstract reading is the family of
domain subsets whose aggregate value satisfies the comparison. A witness
for its truth value under an interpretation is a forcing pair (S, N):
atoms S are true, atoms N are false, and every completion of the remaining
domain atoms yields the same truth value. Witness enumeration reports all
pairs that are minimal under componentwise set inclusion.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import AbstractSet, Iterable

from .errors import CapacityError, NotSatisfied, Satisfied

_WITNESS_DOMAIN_LIMIT = 20


@dataclass(frozen=True, slots=True)
class ConstraintAtom:
    domain: tuple[tuple[int, int], ...]  # (atom id, weight)
    function: str  # "sum" | "count"
    comparison: str
    bound: int

    def __post_init__(self):
        atoms = [a for a, _ in self.domain]
        if len(set(atoms)) != len(atoms):
            raise ValueError("constraint atom domain must not repeat atoms")

    @property
    def atoms(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.domain)

    def weight(self, atom: int) -> int:
        for a, w in self.domain:
            if a == atom:
                return w
        raise KeyError(atom)


@dataclass(frozen=True, slots=True)
class Witness:
    must_be_true: frozenset[int]
    must_be_false: frozenset[int]
    polarity: str  # "satisfaction" | "violation"


class WitnessList(list):
    """Plain list of witnesses; `truncated` flags a hit of the size cap."""

    truncated: bool = False


def _compare(value: int, comparison: str, bound: int) -> bool:
    if comparison == ">":
        return value > bound
    if comparison == ">=":
        return value >= bound
    if comparison == "<":
        return value < bound
    if comparison == "<=":
        return value <= bound
    if comparison == "=":
        return value == bound
    if comparison == "!=":
        return value != bound
    raise ValueError(f"unknown comparison {comparison!r}")


def evaluate(c: ConstraintAtom, interpretation: AbstractSet[int]) -> bool:
    """Truth of the constraint atom: aggregate over its true domain atoms."""
    value = sum(w for a, w in c.domain if a in interpretation)
    return _compare(value, c.comparison, c.bound)


def _attainable_sums(weights: Iterable[int], base: int) -> set[int]:
    sums = {base}
    for w in weights:
        sums |= {s + w for s in sums}
    return sums


def forced_value(c: ConstraintAtom, true_set: AbstractSet[int], false_set: AbstractSet[int]) -> bool | None:
    """Truth value the pair forces over all completions, or None.

    Monotone comparisons are decided from the attainable value interval;
    = and != need the exact attainable sums since the interval endpoints
    do not determine membership of the bound.
    """
    base = sum(w for a, w in c.domain if a in true_set)
    free = [w for a, w in c.domain if a not in true_set and a not in false_set]
    if c.comparison in (">", ">=", "<", "<="):
        low = base + sum(w for w in free if w < 0)
        high = base + sum(w for w in free if w > 0)
        low_ok = _compare(low, c.comparison, c.bound)
        high_ok = _compare(high, c.comparison, c.bound)
        if low_ok and high_ok:
            return True
        if not low_ok and not high_ok:
            return False
        return None
    sums = _attainable_sums(free, base)
    verdicts = {_compare(s, c.comparison, c.bound) for s in sums}
    if verdicts == {True}:
        return True
    if verdicts == {False}:
        return False
    return None


def _minimal_witnesses(
    c: ConstraintAtom,
    interpretation: AbstractSet[int],
    target: bool,
    cap: int,
) -> WitnessList:
    if len(c.domain) > _WITNESS_DOMAIN_LIMIT:
        raise CapacityError(
            f"aggregate domain of {len(c.domain)} atoms exceeds the witness "
            f"enumeration limit of {_WITNESS_DOMAIN_LIMIT}"
        )
    polarity = "satisfaction" if target else "violation"
    in_atoms = sorted(a for a, _ in c.domain if a in interpretation)
    out_atoms = sorted(a for a, _ in c.domain if a not in interpretation)
    found = WitnessList()
    for size in range(len(in_atoms) + len(out_atoms) + 1):
        for true_count in range(min(size, len(in_atoms)), -1, -1):
            false_count = size - true_count
            if false_count > len(out_atoms):
                continue
            for chosen_true in combinations(in_atoms, true_count):
                true_set = frozenset(chosen_true)
                for chosen_false in combinations(out_atoms, false_count):
                    false_set = frozenset(chosen_false)
                    if any(
                        w.must_be_true <= true_set and w.must_be_false <= false_set
                        for w in found
                    ):
                        continue
                    if forced_value(c, true_set, false_set) == target:
                        found.append(Witness(true_set, false_set, polarity))
                        if len(found) >= cap:
                            found.truncated = True
                            return found
    return found


def satisfaction_witnesses(
    c: ConstraintAtom, interpretation: AbstractSet[int], cap: int = 64
) -> WitnessList:
    """All minimal forcing pairs explaining why the atom holds."""
    if not evaluate(c, interpretation):
        raise NotSatisfied("constraint atom is falsified by the interpretation")
    return _minimal_witnesses(c, interpretation, True, cap)


def violation_witnesses(
    c: ConstraintAtom, interpretation: AbstractSet[int], cap: int = 64
) -> WitnessList:
    """All minimal forcing pairs explaining why the atom fails."""
    if evaluate(c, interpretation):
        raise Satisfied("constraint atom is satisfied by the interpretation")
    return _minimal_witnesses(c, interpretation, False, cap)


def witnesses_for_truth_value(
    c: ConstraintAtom, interpretation: AbstractSet[int], cap: int = 64
) -> WitnessList:
    """Witnesses matching the atom's actual truth value under the interpretation."""
    if evaluate(c, interpretation):
        return satisfaction_witnesses(c, interpretation, cap)
    return violation_witnesses(c, interpretation, cap)

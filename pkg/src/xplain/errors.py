"""Exception hierarchy shared by all engine modules."""

from __future__ import annotations


class XplainError(Exception):
    """Base class for all engine errors."""


class ParseError(XplainError):
    """Syntax or validation error in an input program.

    Carries a 1-based line/column position and, when available, a hint
    naming the token class the parser expected at that position.
    """

    def __init__(self, message: str, line: int = 0, column: int = 0, expected: str | None = None):
        self.line = line
        self.column = column
        self.expected = expected
        at = f" at {line}:{column}" if line else ""
        hint = f" (expected {expected})" if expected else ""
        super().__init__(f"{message}{at}{hint}")


class ArityMismatch(ParseError):
    """A predicate is used with two different arities."""


class BoundError(XplainError):
    """Choice bounds with lower > upper."""


class SafetyError(XplainError):
    """A rule variable does not occur in any positive ordinary body literal."""

    def __init__(self, variable: str, rule_text: str):
        self.variable = variable
        self.rule_text = rule_text
        super().__init__(f"unsafe variable {variable} in rule: {rule_text}")


class GroundError(XplainError):
    """Instantiation produced an invalid ground construct."""


class DuplicateAggregateAtom(GroundError):
    """Instantiation collapsed two aggregate elements onto the same atom
    with different weights; the element set would no longer have one
    weight per atom."""


class CapacityError(XplainError):
    """A configured size or search budget was exceeded."""


class AggregatePresent(XplainError):
    """Operation requires an aggregate-free program."""


class NotAModel(XplainError):
    """Minimality check invoked on an interpretation that is not a model."""


class NoAnswerSets(XplainError):
    """Cautious consequences requested for an inconsistent program."""


class NotSatisfied(XplainError):
    """Satisfaction witnesses requested for a falsified constraint atom."""


class Satisfied(XplainError):
    """Violation witnesses requested for a satisfied constraint atom."""


class NotInAnswerSet(XplainError):
    """Membership justification requested for an atom outside the answer set."""


class InAnswerSet(XplainError):
    """Absence justification requested for an atom inside the answer set."""


class NotAnAnswerSet(XplainError):
    """Justification requested relative to a non-answer-set interpretation."""


class JustificationIncomplete(XplainError):
    """No graph satisfies the support rules (head-cycle through disjunction);
    the atom is in the answer set only through a circular disjunctive
    interaction that positive-edge-acyclic support cannot express."""


class NoContrast(XplainError):
    """No perturbed fact base within the given space flips the property."""


class BaselineViolated(XplainError):
    """Contrastive query precondition failed for the current fact base."""


class HardCoreInconsistent(XplainError):
    """The hard (non-soft) part of the program is already inconsistent."""

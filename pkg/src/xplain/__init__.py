"""Explainable answer-set programming engine.

Parses and grounds disjunctive logic programs with #sum/#count aggregates
and choice rules, enumerates answer sets, and explains them: justification
graphs for membership and absence (aggregates justified through forcing
witnesses), contrastive explanations over minimally perturbed fact bases,
abduction, and inconsistency analysis via minimal inconsistent subsets and
minimal correction sets. Served through a CLI, an interactive REPL, and an
HTTP/JSON API.
"""

__version__ = "0.1.0"

"""Interactive sessions: one loaded program plus a mutable fact overlay.

A session is the single engine path behind the CLI, the REPL and the HTTP
service. Facts can be assumed (added) and retracted (removed); cached
answer sets are invalidated on every overlay change. Every executed
command line pushes an undo snapshot and is recorded in the history, so
replaying the history on a fresh session reproduces the state exactly.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass

from . import jsonio
from .contrastive import (
    ContrastiveExplanation,
    ContrastiveQuery,
    FactSpace,
    atom_key,
    contrast,
    contrast_all,
    parse_fact_space,
)
from .errors import (
    InAnswerSet,
    NoContrast,
    NotAnAnswerSet,
    NotInAnswerSet,
    XplainError,
)
from .ground import GroundProgram, ground
from .justify import (
    JustificationGraph,
    absence_graph_for_unknown,
    justify,
    justify_absence,
    render_text,
)
from .parser import parse_atom_list, parse_ground_atom, parse_program
from .stable import enumerate_answer_sets
from .syntax import Atom, Program, Rule


def _visible_projection(gp: GroundProgram, interpretation: frozenset[int]) -> tuple[int, ...]:
    return tuple(sorted(a for a in interpretation if not gp.table.is_hidden(a)))


@dataclass(frozen=True, slots=True)
class _Snapshot:
    assumed: tuple[Atom, ...]
    retracted: tuple[Atom, ...]


class Session:
    def __init__(self, program_text: str):
        self.program_text = program_text
        self.program = parse_program(program_text)
        self.assumed: tuple[Atom, ...] = ()
        self.retracted: tuple[Atom, ...] = ()
        self.history: list[str] = []
        self.space: FactSpace | None = None
        self._snapshots: list[_Snapshot] = []
        self._cache: dict = {}
        self._replaying = False

    # --- program state -----------------------------------------------------

    def effective_program(self) -> Program:
        retracted = set(self.retracted)
        rules = [
            r
            for r in self.program.rules
            if not (r.is_fact and r.head[0] in retracted)
        ]
        present = {r.head[0] for r in rules if r.is_fact}
        for atom in self.assumed:
            if atom not in retracted and atom not in present:
                rules.append(Rule((atom,)))
                present.add(atom)
        return Program(tuple(rules))

    def ground_program(self) -> GroundProgram:
        if "ground" not in self._cache:
            self._cache["ground"] = ground(self.effective_program())
        return self._cache["ground"]

    def _full_models(self) -> list[frozenset[int]]:
        if "models" not in self._cache:
            self._cache["models"] = enumerate_answer_sets(self.ground_program())
        return self._cache["models"]

    def _invalidate(self) -> None:
        self._cache.clear()

    # --- queries -------------------------------------------------------------

    def visible_models(self, limit: int | None = None) -> tuple[list[list[str]], bool]:
        """Distinct hidden-atom-free projections in ascending bitmask order."""
        gp = self.ground_program()
        if limit is None:
            full = self._full_models()
            complete = True
        else:
            full = enumerate_answer_sets(gp, limit=limit)
            complete = len(full) < limit
        projections: list[tuple[int, ...]] = []
        seen: set[tuple[int, ...]] = set()
        for m in full:
            proj = _visible_projection(gp, m)
            if proj not in seen:
                seen.add(proj)
                projections.append(proj)
        projections.sort(key=lambda p: sum(1 << a for a in p))
        return [[gp.table.text(a) for a in proj] for proj in projections], complete

    def models_payload(self, limit: int | None = None) -> dict:
        models, complete = self.visible_models(limit)
        return {"models": models, "complete": complete}

    def _resolve_model(
        self, atom_text: str, mode: str, model_texts: list[str] | None
    ) -> frozenset[int]:
        gp = self.ground_program()
        models = self._full_models()
        if model_texts is not None:
            wanted = set(model_texts)
            for m in models:
                visible = {gp.table.text(a) for a in _visible_projection(gp, m)}
                if visible == wanted:
                    return m
            raise NotAnAnswerSet("the given model is not an answer set of the program")
        atom_id = gp.table.get(parse_ground_atom(atom_text))
        for m in models:
            contained = atom_id is not None and atom_id in m
            if contained == (mode == "in"):
                return m
        if mode == "in":
            raise NotInAnswerSet(f"atom {atom_text} is in no answer set")
        raise InAnswerSet(f"atom {atom_text} is in every answer set")

    def explain_graphs(
        self,
        atom_text: str,
        mode: str,
        alternatives: int = 1,
        model_texts: list[str] | None = None,
    ) -> list[JustificationGraph]:
        if mode not in ("in", "out"):
            raise ValueError(f"explanation mode must be 'in' or 'out', got {mode!r}")
        gp = self.ground_program()
        atom = parse_ground_atom(atom_text)
        interpretation = self._resolve_model(atom_text, mode, model_texts)
        atom_id = gp.table.get(atom)
        if atom_id is None:
            if mode == "in":
                raise NotInAnswerSet(f"atom {atom_text} is in no answer set")
            return [absence_graph_for_unknown(str(atom))]
        if mode == "in":
            graphs = justify(gp, interpretation, atom_id, alternatives=max(alternatives, 1))
        else:
            graphs = justify_absence(gp, interpretation, atom_id, alternatives=max(alternatives, 1))
        return graphs if isinstance(graphs, list) else [graphs]

    def explain_payload(
        self,
        atom_text: str,
        mode: str,
        alternatives: int = 1,
        model_texts: list[str] | None = None,
    ) -> dict:
        graphs = self.explain_graphs(atom_text, mode, alternatives, model_texts)
        return {"graphs": [g.to_json_obj() for g in graphs]}

    def split_for_space(self, space: FactSpace) -> tuple[Program, frozenset[Atom]]:
        """Context rules and the mutable fact base the space governs."""
        candidates = space.candidates
        effective = self.effective_program()
        base = frozenset(
            r.head[0] for r in effective.rules if r.is_fact and r.head[0] in candidates
        )
        context = Program(
            tuple(
                r
                for r in effective.rules
                if not (r.is_fact and r.head[0] in candidates)
            )
        )
        return context, base

    def contrast_payload(
        self,
        mode: str,
        target_text: str,
        space: FactSpace,
        k: int | None = None,
    ) -> dict:
        if mode == "not-an-answer-set":
            target: frozenset[Atom] | Atom = frozenset(parse_atom_list(target_text))
        else:
            target = parse_ground_atom(target_text)
        query = ContrastiveQuery(mode, target)
        context, base = self.split_for_space(space)
        if k is None:
            try:
                explanations = [contrast(context, base, query, space)]
            except NoContrast:
                explanations = []
        else:
            explanations = contrast_all(context, base, query, space, k)
        return {
            "found": bool(explanations),
            "explanations": [_explanation_obj(e) for e in explanations],
        }

    # --- mutations -----------------------------------------------------------

    def _known_arities(self) -> dict[str, int]:
        arities: dict[str, int] = {}
        for rule in self.program.rules:
            for atom in rule.head_atoms:
                arities[atom.predicate] = atom.arity
        return arities

    def _check_arity(self, atom: Atom) -> None:
        known = self._known_arities().get(atom.predicate)
        if known is not None and known != atom.arity:
            raise XplainError(
                f"predicate {atom.predicate!r} is used with arity {known} in the program"
            )

    def assume(self, atom_text: str) -> Atom:
        atom = parse_ground_atom(atom_text.rstrip("."))
        self._check_arity(atom)
        if atom in self.retracted:
            self.retracted = tuple(a for a in self.retracted if a != atom)
        if atom not in self.assumed:
            self.assumed = self.assumed + (atom,)
        self._invalidate()
        return atom

    def retract(self, atom_text: str) -> Atom:
        atom = parse_ground_atom(atom_text.rstrip("."))
        if atom in self.assumed:
            self.assumed = tuple(a for a in self.assumed if a != atom)
        if atom not in self.retracted:
            self.retracted = self.retracted + (atom,)
        self._invalidate()
        return atom

    def overlay_payload(self) -> dict:
        return {
            "assumed": sorted(map(str, self.assumed)),
            "retracted": sorted(map(str, self.retracted)),
        }

    def _push_snapshot(self) -> None:
        self._snapshots.append(_Snapshot(self.assumed, self.retracted))

    def undo(self) -> bool:
        if not self._snapshots:
            return False
        snap = self._snapshots.pop()
        self.assumed = snap.assumed
        self.retracted = snap.retracted
        self._invalidate()
        return True

    # --- command interface (REPL and transcripts) ----------------------------

    def execute(self, line: str) -> str:
        """Run one command line; errors come back as messages, never raise."""
        line = line.strip()
        if not line or line.startswith("%"):
            return ""
        try:
            recorded, output = self._dispatch(line)
        except XplainError as exc:
            recorded, output = True, f"error: {exc}"
        except (ValueError, OSError) as exc:
            recorded, output = True, f"error: {exc}"
        if recorded:
            self.history.append(line)
        return output

    def _dispatch(self, line: str) -> tuple[bool, str]:
        words = shlex.split(line)
        command, args = words[0], words[1:]
        as_json = "--json" in args
        args = [a for a in args if a != "--json"]
        if command == "undo":
            restored = self.undo()
            return True, "state restored" if restored else "nothing to undo"
        if command == "save":
            if args[:1] != ["transcript"]:
                return False, "usage: save transcript [FILE]"
            self._push_snapshot()
            path = args[1] if len(args) > 1 else "transcript.txt"
            if not self._replaying:
                with open(path, "w") as handle:
                    handle.write("\n".join(self.history) + ("\n" if self.history else ""))
            return True, f"transcript saved to {path}"

        self._push_snapshot()
        if command == "models":
            limit = int(args[0]) if args else None
            payload = self.models_payload(limit)
            if as_json:
                return True, jsonio.canonical(payload)
            if not payload["models"]:
                return True, "no answer sets"
            return True, "\n".join("{" + ", ".join(m) + "}" for m in payload["models"])
        if command in ("why", "whynot"):
            if not args:
                return True, f"usage: {command} ATOM [K] [--json]"
            alternatives = int(args[1]) if len(args) > 1 else 1
            mode = "in" if command == "why" else "out"
            payload = self.explain_payload(args[0], mode, alternatives)
            if as_json:
                return True, jsonio.canonical(payload)
            graphs = self.explain_graphs(args[0], mode, alternatives)
            parts = []
            for idx, g in enumerate(graphs):
                header = f"alternative {idx + 1}:\n" if len(graphs) > 1 else ""
                parts.append(header + render_text(g))
            return True, "\n\n".join(parts)
        if command == "assume":
            atom = self.assume(" ".join(args))
            return True, f"assumed {atom}"
        if command == "retract":
            atom = self.retract(" ".join(args))
            return True, f"retracted {atom}"
        if command == "space":
            if not args:
                return True, "usage: space FILE"
            with open(args[0]) as handle:
                self.space = parse_fact_space(handle.read())
            return True, f"fact space loaded ({len(self.space.candidates)} candidates)"
        if command == "contrast":
            if len(args) < 2:
                return True, "usage: contrast MODE TARGET [K] [--json]"
            if self.space is None:
                return True, "error: no fact space loaded (use: space FILE)"
            k = int(args[2]) if len(args) > 2 else None
            payload = self.contrast_payload(args[0], args[1], self.space, k)
            if as_json:
                return True, jsonio.canonical(payload)
            return True, render_contrast(payload)
        if command == "help":
            return True, HELP_TEXT
        return True, f"unknown command {command!r} (try: help)"

    @classmethod
    def replay(cls, program_text: str, history: list[str]) -> "Session":
        """Fresh session with the history re-executed (transcript writes skipped)."""
        session = cls(program_text)
        session._replaying = True
        try:
            for line in history:
                session.execute(line)
        finally:
            session._replaying = False
        return session


def _explanation_obj(e: ContrastiveExplanation) -> dict:
    return {
        "facts": sorted(map(str, e.new_facts)),
        "added": sorted(map(str, e.added)),
        "removed": sorted(map(str, e.removed)),
        "distance": e.distance,
    }


def render_contrast(payload: dict) -> str:
    if not payload["found"]:
        return "no minimal change found"
    lines = []
    for e in payload["explanations"]:
        if e["distance"] == 0:
            lines.append("already holds (distance 0)")
            continue
        added = ", ".join(e["added"]) or "-"
        removed = ", ".join(e["removed"]) or "-"
        lines.append(f"remove {{{removed}}}; add {{{added}}}; distance {e['distance']}")
    return "\n".join(lines)


HELP_TEXT = """commands:
  models [N] [--json]         list answer sets (visible atoms)
  why ATOM [K] [--json]       justify membership, up to K alternative graphs
  whynot ATOM [--json]        justify absence
  assume FACT.                add a fact to the overlay
  retract FACT.               remove a fact
  space FILE                  load a fact space for contrast queries
  contrast MODE TARGET [K]    MODE: not-an-answer-set | foil-becomes-brave | fact-no-longer-brave
  undo                        restore the state before the last command
  save transcript [FILE]      write the command history
  help                        this text
  quit                        leave the session"""

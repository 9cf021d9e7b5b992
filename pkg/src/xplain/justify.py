"""Labelled justification graphs for atom membership and absence.

A graph explains one signed query atom against a fixed answer set. An
`in` node cites exactly one supporting rule: head contains the atom, body
holds, every other head atom is false. Its edges point at the reasons:
positive body atoms (+, in), negated body atoms (-, out), aggregate
literals through one forcing witness (+ edges into the witness's true
set, - edges into its false set), and the remaining head atoms (-, out).
A support with no premises ends in the `fact` terminal. An `out` node
shows every rule that could derive the atom to be blocked, one reason per
rule: a falsified body literal, a witness for a falsified aggregate, or
another head atom that already satisfies the rule; atoms no rule derives
end in the `no-rule` terminal.

Positive edges between `in` nodes must be acyclic (a derivation), while
cycles through `out` nodes are fine (mutual absence). Ties are broken by
lowest rule index, then witness enumeration order, then body position;
`alternatives` enumerates the other consistent graphs in that order.
`verify_justification` re-checks all structural rules from scratch and is
the test oracle for the builder.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import product
from typing import Iterator

from .aggregates import (
    ConstraintAtom,
    Witness,
    evaluate,
    forced_value,
    witnesses_for_truth_value,
)
from .errors import (
    InAnswerSet,
    JustificationIncomplete,
    NotAnAnswerSet,
    NotInAnswerSet,
)
from .ground import GroundProgram, GroundRule
from .stable import body_satisfied, is_answer_set
from .syntax import AggregateLiteral, Literal

FACT_ID = "fact"
NO_RULE_ID = "no-rule"


@dataclass(frozen=True, slots=True)
class WitnessUse:
    rule_index: int
    aggregate_position: int  # position among the rule's aggregate literals
    aggregate_text: str
    polarity: str
    true_atoms: tuple[int, ...]
    false_atoms: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class Node:
    id: str
    kind: str  # "atom" | "fact" | "no-rule"
    atom_text: str | None = None
    atom_id: int | None = None
    sign: str | None = None  # "in" | "out"
    rule_index: int | None = None
    witness_uses: tuple[WitnessUse, ...] = ()


Edge = tuple[str, str, str]  # (from id, to id, "+" or "-")


@dataclass(slots=True)
class JustificationGraph:
    root: str
    nodes: dict[str, Node]
    edges: frozenset[Edge]

    def outgoing(self, node_id: str) -> list[Edge]:
        return sorted(e for e in self.edges if e[0] == node_id)

    def to_json_obj(self) -> dict:
        nodes = []
        for node in sorted(self.nodes.values(), key=lambda n: n.id):
            entry: dict = {"id": node.id, "kind": node.kind}
            if node.kind == "atom":
                entry["atom"] = node.atom_text
                entry["sign"] = node.sign
                if node.rule_index is not None:
                    entry["rule"] = {"index": node.rule_index, "text": self._rule_texts[node.rule_index]}
                if node.witness_uses:
                    entry["witness"] = [
                        {
                            "rule": w.rule_index,
                            "aggregate": w.aggregate_text,
                            "polarity": w.polarity,
                            "true_atoms": [self._atom_texts[a] for a in w.true_atoms],
                            "false_atoms": [self._atom_texts[a] for a in w.false_atoms],
                        }
                        for w in node.witness_uses
                    ]
            nodes.append(entry)
        edges = [
            {"from": f, "to": t, "label": label}
            for f, t, label in sorted(self.edges)
        ]
        return {"root": self.root, "nodes": nodes, "edges": edges}

    # display metadata injected by the builder
    _rule_texts: dict[int, str] = field(default_factory=dict)
    _atom_texts: dict[int, str] = field(default_factory=dict)

    def to_dot(self) -> str:
        lines = ["digraph justification {", "  rankdir=TB;"]
        for node in sorted(self.nodes.values(), key=lambda n: n.id):
            if node.kind == "atom":
                shape = "ellipse" if node.sign == "in" else "box"
                label = f"{node.atom_text} [{node.sign}]"
            else:
                shape = "diamond"
                label = node.kind
            lines.append(f'  "{node.id}" [label="{label}", shape={shape}];')
        for f, t, label in sorted(self.edges):
            style = "solid" if label == "+" else "dashed"
            lines.append(f'  "{f}" -> "{t}" [label="{label}", style={style}];')
        lines.append("}")
        return "\n".join(lines)


def _node_id(sign: str, atom_text: str) -> str:
    return f"{sign}:{atom_text}"


@dataclass(frozen=True, slots=True)
class _Reason:
    """One way to block a rule at an out node or annotate a support edge set."""

    edges: tuple[tuple[str, int], ...]  # (sign of target node, atom id)
    witness_use: WitnessUse | None = None


class _Builder:
    def __init__(self, program: GroundProgram, interpretation: frozenset[int]):
        self.program = program
        self.interp = interpretation
        self.table = program.table
        self.head_rules: dict[int, list[int]] = {}
        for idx, rule in enumerate(program.rules):
            for a in rule.head:
                self.head_rules.setdefault(a, []).append(idx)
        self._witness_cache: dict[tuple[int, int], list[Witness]] = {}

    # --- choice spaces -----------------------------------------------------

    def _witnesses(self, rule_index: int, agg_position: int) -> list[Witness]:
        key = (rule_index, agg_position)
        if key not in self._witness_cache:
            agg = self.program.rules[rule_index].aggregates[agg_position]
            self._witness_cache[key] = list(
                witnesses_for_truth_value(agg.constraint, self.interp)
            )
        return self._witness_cache[key]

    def _support_choices(self, atom_id: int) -> Iterator[tuple[int, tuple[WitnessUse, ...]]]:
        for rule_index in self.head_rules.get(atom_id, []):
            rule = self.program.rules[rule_index]
            if not body_satisfied(self.interp, rule):
                continue
            if any(h != atom_id and h in self.interp for h in rule.head):
                continue
            witness_lists = [
                [
                    WitnessUse(
                        rule_index,
                        pos,
                        str(rule.aggregates[pos].ast),
                        w.polarity,
                        tuple(sorted(w.must_be_true)),
                        tuple(sorted(w.must_be_false)),
                    )
                    for w in self._witnesses(rule_index, pos)
                ]
                for pos in range(len(rule.aggregates))
            ]
            for combo in product(*witness_lists):
                yield rule_index, combo

    def _support_edges(
        self, atom_id: int, rule_index: int, witness_uses: tuple[WitnessUse, ...]
    ) -> list[tuple[str, int]]:
        rule = self.program.rules[rule_index]
        targets: list[tuple[str, int]] = []
        for b in rule.pos:
            targets.append(("in", b))
        for c in rule.neg:
            targets.append(("out", c))
        for use in witness_uses:
            targets.extend(("in", a) for a in use.true_atoms)
            targets.extend(("out", a) for a in use.false_atoms)
        for h in rule.head:
            if h != atom_id:
                targets.append(("out", h))
        seen: set[tuple[str, int]] = set()
        unique = []
        for t in targets:
            if t not in seen:
                seen.add(t)
                unique.append(t)
        return unique

    def _blocking_reasons(self, rule_index: int) -> list[_Reason]:
        """Ways to show one rule cannot derive the out atom, in canonical order."""
        rule = self.program.rules[rule_index]
        reasons: list[_Reason] = []
        agg_position = -1
        for lit in rule.ast.body:
            if isinstance(lit, AggregateLiteral):
                agg_position += 1
                agg = rule.aggregates[agg_position]
                literal_true = evaluate(agg.constraint, self.interp) != agg.negated
                if literal_true:
                    continue
                for w in self._witnesses(rule_index, agg_position):
                    use = WitnessUse(
                        rule_index,
                        agg_position,
                        str(agg.ast),
                        w.polarity,
                        tuple(sorted(w.must_be_true)),
                        tuple(sorted(w.must_be_false)),
                    )
                    edges = tuple(
                        [("in", a) for a in use.true_atoms]
                        + [("out", a) for a in use.false_atoms]
                    )
                    reasons.append(_Reason(edges, use))
            else:
                atom_id = self.table.get(lit.atom)
                in_i = atom_id in self.interp
                if not lit.negated and not in_i:
                    reasons.append(_Reason((("out", atom_id),)))
                elif lit.negated and in_i:
                    reasons.append(_Reason((("in", atom_id),)))
        if reasons:
            return reasons
        # body holds, so the rule is satisfied by some other head atom
        return [
            _Reason((("in", h),))
            for h in rule.head
            if h in self.interp
        ]


    # --- graph search ------------------------------------------------------

    def graphs(self, atom_id: int, sign: str) -> Iterator[JustificationGraph]:
        initial = _SearchState({}, {}, {})
        for state in self._expand((sign, atom_id), frozenset(), initial):
            yield self._finish(state, _node_id(sign, self.table.text(atom_id)))

    def _expand(
        self,
        key: tuple[str, int],
        positive_ancestors: frozenset[tuple[str, int]],
        state: "_SearchState",
    ) -> Iterator["_SearchState"]:
        status = state.status.get(key)
        if status is not None:
            yield state
            return
        sign, atom_id = key
        if sign == "in":
            yield from self._expand_in(key, positive_ancestors, state)
        else:
            yield from self._expand_out(key, state)

    def _expand_in(self, key, positive_ancestors, state) -> Iterator["_SearchState"]:
        sign, atom_id = key
        chain = positive_ancestors | {key}
        for rule_index, witness_uses in self._support_choices(atom_id):
            targets = self._support_edges(atom_id, rule_index, witness_uses)
            if any(t_sign == "in" and ("in", t_atom) in chain for t_sign, t_atom in targets):
                continue  # would close a positive support cycle
            st = state.child()
            st.status[key] = "busy"
            st.choices[key] = (rule_index, witness_uses)
            st.edges[key] = tuple(targets) if targets else (("fact", -1),)
            for states in self._expand_children(targets, key, chain, st):
                states.status[key] = "done"
                yield states

    def _expand_out(self, key, state) -> Iterator["_SearchState"]:
        sign, atom_id = key
        rule_indices = self.head_rules.get(atom_id, [])
        option_lists = [self._blocking_reasons(r) for r in rule_indices]
        if not rule_indices:
            st = state.child()
            st.status[key] = "busy"
            st.choices[key] = ((), ())
            st.edges[key] = (("no-rule", -1),)
            st.status[key] = "done"
            yield st
            return
        for combo in product(*option_lists):
            targets: list[tuple[str, int]] = []
            seen: set[tuple[str, int]] = set()
            for reason in combo:
                for t in reason.edges:
                    if t not in seen:
                        seen.add(t)
                        targets.append(t)
            if not targets:
                # every rule is blocked without premises (tautologically
                # falsified aggregates): nothing can ever derive the atom
                targets = [("no-rule", -1)]
            st = state.child()
            st.status[key] = "busy"
            st.choices[key] = (tuple(rule_indices), combo)
            st.edges[key] = tuple(targets)
            for states in self._expand_children(targets, key, frozenset(), st):
                states.status[key] = "done"
                yield states

    def _expand_children(self, targets, parent_key, chain, state) -> Iterator["_SearchState"]:
        pending = [t for t in targets if t[0] in ("in", "out")]

        def rec(index: int, st: "_SearchState") -> Iterator["_SearchState"]:
            if index == len(pending):
                yield st
                return
            t_sign, t_atom = pending[index]
            child_key = (t_sign, t_atom)
            if parent_key[0] == "in" and t_sign == "in":
                child_chain = chain
            else:
                child_chain = frozenset()
            for nxt in self._expand(child_key, child_chain, st):
                yield from rec(index + 1, nxt)

        yield from rec(0, state)

    def _finish(self, state: "_SearchState", root_id: str) -> JustificationGraph:
        nodes: dict[str, Node] = {}
        edges: set[Edge] = set()
        for key, targets in state.edges.items():
            sign, atom_id = key
            source_id = _node_id(sign, self.table.text(atom_id))
            rule_index = None
            witness_uses: tuple[WitnessUse, ...] = ()
            choice = state.choices[key]
            if sign == "in":
                rule_index, witness_uses = choice
            else:
                witness_uses = tuple(
                    r.witness_use for r in choice[1] if r.witness_use is not None
                )
            nodes[source_id] = Node(
                source_id,
                "atom",
                self.table.text(atom_id),
                atom_id,
                sign,
                rule_index,
                witness_uses,
            )
            for t_sign, t_atom in targets:
                if t_sign == "fact":
                    nodes.setdefault(FACT_ID, Node(FACT_ID, "fact"))
                    edges.add((source_id, FACT_ID, "+"))
                elif t_sign == "no-rule":
                    nodes.setdefault(NO_RULE_ID, Node(NO_RULE_ID, "no-rule"))
                    edges.add((source_id, NO_RULE_ID, "-"))
                else:
                    target_id = _node_id(t_sign, self.table.text(t_atom))
                    label = "+" if t_sign == "in" else "-"
                    edges.add((source_id, target_id, label))
        graph = JustificationGraph(root_id, nodes, frozenset(edges))
        graph._rule_texts = {i: r.text for i, r in enumerate(self.program.rules)}
        graph._atom_texts = {i: self.table.text(i) for i in range(len(self.table))}
        return graph


@dataclass(slots=True)
class _SearchState:
    status: dict
    choices: dict
    edges: dict

    def child(self) -> "_SearchState":
        return _SearchState(dict(self.status), dict(self.choices), dict(self.edges))


def _require_answer_set(program: GroundProgram, interpretation: frozenset[int]) -> None:
    if not is_answer_set(program, interpretation):
        raise NotAnAnswerSet("the given interpretation is not an answer set")


def justify(
    program: GroundProgram,
    interpretation: frozenset[int],
    atom_id: int,
    alternatives: int = 1,
) -> JustificationGraph | list[JustificationGraph]:
    """Why is the atom in the answer set? Raises NotInAnswerSet otherwise."""
    _require_answer_set(program, interpretation)
    if atom_id not in interpretation:
        raise NotInAnswerSet(f"atom {program.table.text(atom_id)} is not in the answer set")
    graphs = _collect(program, interpretation, atom_id, "in", alternatives)
    return graphs if alternatives > 1 else graphs[0]


def justify_absence(
    program: GroundProgram,
    interpretation: frozenset[int],
    atom_id: int,
    alternatives: int = 1,
) -> JustificationGraph | list[JustificationGraph]:
    """Why is the atom missing from the answer set? Raises InAnswerSet otherwise."""
    _require_answer_set(program, interpretation)
    if atom_id in interpretation:
        raise InAnswerSet(f"atom {program.table.text(atom_id)} is in the answer set")
    graphs = _collect(program, interpretation, atom_id, "out", alternatives)
    return graphs if alternatives > 1 else graphs[0]


def _collect(program, interpretation, atom_id, sign, alternatives) -> list[JustificationGraph]:
    if alternatives < 1:
        raise ValueError("alternatives must be positive")
    builder = _Builder(program, frozenset(interpretation))
    out: list[JustificationGraph] = []
    seen: set[frozenset[Edge]] = set()
    for graph in builder.graphs(atom_id, sign):
        identity = graph.edges
        if identity in seen:
            continue
        seen.add(identity)
        out.append(graph)
        if len(out) >= alternatives:
            break
    if not out:
        raise JustificationIncomplete(
            f"no acyclic support exists for {program.table.text(atom_id)}; the atom "
            "is established only through a disjunctive head cycle"
        )
    return out


def absence_graph_for_unknown(atom_text: str) -> JustificationGraph:
    """Absence graph for an atom outside the Herbrand base: nothing derives it."""
    root_id = _node_id("out", atom_text)
    nodes = {
        root_id: Node(root_id, "atom", atom_text, None, "out"),
        NO_RULE_ID: Node(NO_RULE_ID, "no-rule"),
    }
    return JustificationGraph(root_id, nodes, frozenset({(root_id, NO_RULE_ID, "-")}))


# --- independent structural verification -----------------------------------


def _valid_witness_use(
    problems: list[str],
    program: GroundProgram,
    interp: frozenset[int],
    use: WitnessUse,
    where: str,
) -> bool:
    before = len(problems)
    if not 0 <= use.rule_index < len(program.rules):
        problems.append(f"{where}: witness cites unknown rule {use.rule_index}")
        return False
    rule = program.rules[use.rule_index]
    if not 0 <= use.aggregate_position < len(rule.aggregates):
        problems.append(f"{where}: witness cites missing aggregate position")
        return False
    constraint = rule.aggregates[use.aggregate_position].constraint
    domain = set(constraint.atoms)
    true_set = frozenset(use.true_atoms)
    false_set = frozenset(use.false_atoms)
    target = evaluate(constraint, interp)
    expected_polarity = "satisfaction" if target else "violation"
    if use.polarity != expected_polarity:
        problems.append(f"{where}: witness polarity {use.polarity} contradicts the aggregate value")
    if not true_set <= domain & interp:
        problems.append(f"{where}: witness true-set leaves the satisfied domain")
    if not false_set <= domain - interp:
        problems.append(f"{where}: witness false-set leaves the falsified domain")
    if true_set & false_set:
        problems.append(f"{where}: witness sets overlap")
    if forced_value(constraint, true_set, false_set) is not target:
        problems.append(f"{where}: witness does not force the aggregate value")
    else:
        for a in true_set:
            if forced_value(constraint, true_set - {a}, false_set) is target:
                problems.append(f"{where}: witness not minimal (drop true atom {a})")
                break
        else:
            for a in false_set:
                if forced_value(constraint, true_set, false_set - {a}) is target:
                    problems.append(f"{where}: witness not minimal (drop false atom {a})")
                    break
    return len(problems) == before


def _expected_support_targets(
    program: GroundProgram, atom_id: int, rule_index: int, uses: tuple[WitnessUse, ...]
) -> list[tuple[str, int]]:
    rule = program.rules[rule_index]
    targets: list[tuple[str, int]] = []
    for b in rule.pos:
        targets.append(("in", b))
    for c in rule.neg:
        targets.append(("out", c))
    for use in uses:
        targets.extend(("in", a) for a in use.true_atoms)
        targets.extend(("out", a) for a in use.false_atoms)
    for h in rule.head:
        if h != atom_id:
            targets.append(("out", h))
    out: list[tuple[str, int]] = []
    seen: set[tuple[str, int]] = set()
    for t in targets:
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def _edge_targets(graph: JustificationGraph, node_id: str) -> list[tuple[str, str, str]]:
    return [(t, label, graph.nodes[t].kind if t in graph.nodes else "?") for _, t, label in graph.outgoing(node_id)]


def justification_problems(
    program: GroundProgram, interpretation, graph: JustificationGraph
) -> list[str]:
    """Re-check every structural rule from scratch; empty list means valid."""
    problems: list[str] = []
    interp = frozenset(interpretation)
    table = program.table

    if graph.root not in graph.nodes:
        return [f"root {graph.root} is not a node"]

    adjacency: dict[str, list[str]] = {}
    for f, t, _ in graph.edges:
        adjacency.setdefault(f, []).append(t)
        if f not in graph.nodes or t not in graph.nodes:
            problems.append(f"edge {f} -> {t} references a missing node")
    reachable = {graph.root}
    frontier = [graph.root]
    while frontier:
        current = frontier.pop()
        for nxt in adjacency.get(current, []):
            if nxt not in reachable:
                reachable.add(nxt)
                frontier.append(nxt)
    for node_id in graph.nodes:
        if node_id not in reachable:
            problems.append(f"node {node_id} unreachable from the root")

    head_rules: dict[int, list[int]] = {}
    for idx, rule in enumerate(program.rules):
        for a in rule.head:
            head_rules.setdefault(a, []).append(idx)

    for node in graph.nodes.values():
        out_edges = graph.outgoing(node.id)
        if node.kind in ("fact", "no-rule"):
            if out_edges:
                problems.append(f"terminal {node.id} has outgoing edges")
            continue
        if node.sign not in ("in", "out") or node.atom_text is None:
            problems.append(f"node {node.id} lacks sign or atom")
            continue
        if node.id != _node_id(node.sign, node.atom_text):
            problems.append(f"node id {node.id} does not match its content")
        atom_id = node.atom_id
        if atom_id is None:
            resolved = [i for i in range(len(table)) if table.text(i) == node.atom_text]
            atom_id = resolved[0] if resolved else None
        if node.sign == "in":
            if atom_id is None or atom_id not in interp:
                problems.append(f"{node.id}: atom is not in the answer set")
                continue
        else:
            if atom_id is not None and atom_id in interp:
                problems.append(f"{node.id}: atom is in the answer set")
                continue
        if not out_edges:
            problems.append(f"{node.id}: no outgoing justification")
            continue
        for _, target, label in out_edges:
            target_node = graph.nodes.get(target)
            if target_node is None:
                continue
            positive_target = target_node.kind == "fact" or target_node.sign == "in"
            if (label == "+") != positive_target:
                problems.append(f"edge {node.id} -> {target}: label {label} contradicts target sign")

        if node.sign == "in":
            _check_in_node(problems, program, interp, graph, node, atom_id)
        else:
            _check_out_node(problems, program, interp, graph, node, atom_id, head_rules)

    _check_positive_acyclicity(problems, graph)
    return problems


def _targets_as_pairs(graph: JustificationGraph, node: Node) -> list[tuple[str, int]] | None:
    pairs: list[tuple[str, int]] = []
    for _, target, _ in graph.outgoing(node.id):
        t = graph.nodes.get(target)
        if t is None:
            return None
        if t.kind == "fact":
            pairs.append(("fact", -1))
        elif t.kind == "no-rule":
            pairs.append(("no-rule", -1))
        else:
            if t.atom_id is None:
                return None
            pairs.append((t.sign, t.atom_id))
    return pairs


def _check_in_node(problems, program, interp, graph, node, atom_id) -> None:
    where = node.id
    if node.rule_index is None:
        problems.append(f"{where}: no supporting rule recorded")
        return
    if not 0 <= node.rule_index < len(program.rules):
        problems.append(f"{where}: supporting rule index out of range")
        return
    rule = program.rules[node.rule_index]
    if atom_id not in rule.head:
        problems.append(f"{where}: cited rule does not have the atom in its head")
        return
    if not body_satisfied(interp, rule):
        problems.append(f"{where}: cited rule body is falsified by the answer set")
        return
    if any(h != atom_id and h in interp for h in rule.head):
        problems.append(f"{where}: another head atom of the cited rule is in the answer set")
        return
    positions = sorted(u.aggregate_position for u in node.witness_uses)
    if positions != list(range(len(rule.aggregates))) or any(
        u.rule_index != node.rule_index for u in node.witness_uses
    ):
        problems.append(f"{where}: witness annotations do not cover the rule's aggregates")
        return
    uses = tuple(sorted(node.witness_uses, key=lambda u: u.aggregate_position))
    for use in uses:
        if not _valid_witness_use(problems, program, interp, use, where):
            return
    expected = _expected_support_targets(program, atom_id, node.rule_index, uses)
    if not expected:
        expected = [("fact", -1)]
    actual = _targets_as_pairs(graph, node)
    if actual is None:
        problems.append(f"{where}: edges reference unusable nodes")
        return
    if set(expected) != set(actual) or len(actual) != len(set(actual)):
        problems.append(f"{where}: support edges do not match the cited rule")


def _blocking_options(
    program: GroundProgram,
    interp: frozenset[int],
    rule_index: int,
    validated_witnesses: list[WitnessUse],
) -> list[frozenset[tuple[str, int]]]:
    """Edge sets that would legitimately block one rule, recomputed from
    the program; aggregate options come from the (validated) annotations."""
    rule = program.rules[rule_index]
    options: list[frozenset[tuple[str, int]]] = []
    agg_position = -1
    body_falsified = False
    for lit in rule.ast.body:
        if isinstance(lit, AggregateLiteral):
            agg_position += 1
            agg = rule.aggregates[agg_position]
            if evaluate(agg.constraint, interp) != agg.negated:
                continue
            body_falsified = True
            for use in validated_witnesses:
                if use.rule_index == rule_index and use.aggregate_position == agg_position:
                    options.append(
                        frozenset(
                            [("in", a) for a in use.true_atoms]
                            + [("out", a) for a in use.false_atoms]
                        )
                    )
        else:
            lit_atom = program.table.get(lit.atom)
            in_i = lit_atom in interp
            if not lit.negated and not in_i:
                body_falsified = True
                options.append(frozenset({("out", lit_atom)}))
            elif lit.negated and in_i:
                body_falsified = True
                options.append(frozenset({("in", lit_atom)}))
    if not body_falsified:
        options = [frozenset({("in", h)}) for h in rule.head if h in interp]
    return options


def _check_out_node(problems, program, interp, graph, node, atom_id, head_rules) -> None:
    where = node.id
    actual = _targets_as_pairs(graph, node)
    if actual is None:
        problems.append(f"{where}: edges reference unusable nodes")
        return
    present = set(actual)
    rule_indices = head_rules.get(atom_id, []) if atom_id is not None else []
    if not rule_indices:
        if present != {("no-rule", -1)}:
            problems.append(f"{where}: atom has no deriving rule, expected only the no-rule edge")
        return

    validated_witnesses: list[WitnessUse] = []
    for use in node.witness_uses:
        if _valid_witness_use(problems, program, interp, use, where):
            validated_witnesses.append(use)

    if ("no-rule", -1) in present:
        # legal only when every deriving rule is blocked without premises
        if present != {("no-rule", -1)}:
            problems.append(f"{where}: no-rule edge mixed with other justifications")
            return
        empty = frozenset()
        for rule_index in rule_indices:
            options = _blocking_options(program, interp, rule_index, validated_witnesses)
            if empty not in options:
                problems.append(
                    f"{where}: rule {rule_index} is not blocked without premises"
                )
                return
        return

    candidate_reasons: list[list[frozenset[tuple[str, int]]]] = []
    for rule_index in rule_indices:
        options = [
            o for o in _blocking_options(program, interp, rule_index, validated_witnesses)
            if o <= present
        ]
        if not options:
            problems.append(
                f"{where}: rule {rule_index} ({program.rules[rule_index].text}) is not "
                "blocked by the present edges"
            )
            return
        candidate_reasons.append(options)

    # exact cover: each rule picks one reason, together explaining every edge
    def cover(index: int, used: frozenset[tuple[str, int]]) -> bool:
        if index == len(candidate_reasons):
            return used == present
        for option in candidate_reasons[index]:
            if cover(index + 1, used | option):
                return True
        return False

    if not cover(0, frozenset()):
        problems.append(f"{where}: blocking edges do not exactly cover the deriving rules")


def _check_positive_acyclicity(problems: list[str], graph: JustificationGraph) -> None:
    adjacency: dict[str, list[str]] = {}
    for f, t, label in graph.edges:
        source = graph.nodes.get(f)
        target = graph.nodes.get(t)
        if (
            label == "+"
            and source is not None
            and target is not None
            and source.kind == "atom"
            and target.kind == "atom"
            and source.sign == "in"
            and target.sign == "in"
        ):
            adjacency.setdefault(f, []).append(t)
    colors: dict[str, int] = {}

    def dfs(node: str) -> bool:
        colors[node] = 1
        for nxt in adjacency.get(node, []):
            state = colors.get(nxt, 0)
            if state == 1:
                return False
            if state == 0 and not dfs(nxt):
                return False
        colors[node] = 2
        return True

    for node in adjacency:
        if colors.get(node, 0) == 0 and not dfs(node):
            problems.append("positive support cycle among in nodes")
            return


def verify_justification(program: GroundProgram, interpretation, graph: JustificationGraph) -> bool:
    """True iff the graph satisfies every structural rule, checked from scratch."""
    return not justification_problems(program, interpretation, graph)


def render_text(graph: JustificationGraph) -> str:
    """Indented tree rendering for terminal output."""
    lines: list[str] = []
    seen: set[str] = set()

    def walk(node_id: str, label: str | None, depth: int) -> None:
        prefix = "  " * depth + (f"{label} " if label else "")
        node = graph.nodes[node_id]
        if node.kind == "fact":
            lines.append(f"{prefix}fact")
            return
        if node.kind == "no-rule":
            lines.append(f"{prefix}no rule derives it")
            return
        header = f"{node.atom_text} [{node.sign}]"
        if node_id in seen:
            lines.append(f"{prefix}{header} (shown above)")
            return
        seen.add(node_id)
        if node.sign == "in" and node.rule_index is not None:
            header += f"  via rule: {graph._rule_texts.get(node.rule_index, '?')}"
        lines.append(f"{prefix}{header}")
        for use in node.witness_uses:
            true_part = ", ".join(graph._atom_texts.get(a, str(a)) for a in use.true_atoms) or "-"
            false_part = ", ".join(graph._atom_texts.get(a, str(a)) for a in use.false_atoms) or "-"
            lines.append(
                "  " * (depth + 1)
                + f"witness for {use.aggregate_text}: true({true_part}) false({false_part})"
            )
        for _, target, edge_label in graph.outgoing(node_id):
            walk(target, edge_label, depth + 1)

    walk(graph.root, None, 0)
    return "\n".join(lines)

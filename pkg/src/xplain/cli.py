"""Command-line interface.

Subcommands: solve, check, why, whynot, contrast, abduce, mus, repl,
serve. Exit codes: 0 success, 1 negative domain answer (no answer sets,
no contrast, failed check), 2 usage or input error, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import jsonio
from .contrastive import abduce, parse_fact_space
from .errors import (
    BaselineViolated,
    CapacityError,
    HardCoreInconsistent,
    InAnswerSet,
    JustificationIncomplete,
    NoAnswerSets,
    NoContrast,
    NotAnAnswerSet,
    NotInAnswerSet,
    XplainError,
)
from .ground import ground
from .inconsistency import (
    minimal_correction_sets,
    minimal_inconsistent_subsets,
    soft_partition,
)
from .justify import render_text
from .parser import parse_atom_list, parse_ground_atom
from .repl import repl_loop
from .session import Session, render_contrast

_NEGATIVE_ANSWERS = (
    NoContrast,
    NoAnswerSets,
    NotInAnswerSet,
    InAnswerSet,
    NotAnAnswerSet,
    BaselineViolated,
    HardCoreInconsistent,
    JustificationIncomplete,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xplain", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="enumerate answer sets")
    solve.add_argument("file")
    solve.add_argument("--limit", type=int, default=None)
    solve.add_argument("--json", action="store_true")

    check = sub.add_parser("check", help="is the given model an answer set?")
    check.add_argument("file")
    check.add_argument("--model", required=True)

    for name, help_text in (("why", "justify membership"), ("whynot", "justify absence")):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("file")
        cmd.add_argument("--atom", required=True)
        cmd.add_argument("--model", default=None)
        cmd.add_argument("--json", action="store_true")
        if name == "why":
            cmd.add_argument("--alternatives", type=int, default=1)

    contrast_cmd = sub.add_parser("contrast", help="minimally perturb the fact base")
    contrast_cmd.add_argument("file")
    contrast_cmd.add_argument("--space", required=True)
    contrast_cmd.add_argument("--mode", required=True)
    contrast_cmd.add_argument("--target", required=True)
    contrast_cmd.add_argument("--all", type=int, default=None, dest="all_k")
    contrast_cmd.add_argument("--json", action="store_true")

    abduce_cmd = sub.add_parser("abduce", help="minimal hypothesis sets for an observation")
    abduce_cmd.add_argument("file")
    abduce_cmd.add_argument("--obs", required=True)
    abduce_cmd.add_argument("--abducibles", required=True, help="comma-separated predicate names")
    abduce_cmd.add_argument("--json", action="store_true")

    mus = sub.add_parser("mus", help="minimal inconsistent subsets and correction sets")
    mus.add_argument("file")
    mus.add_argument("--soft", default=None, help="comma-separated predicates (default: %%soft markers)")
    mus.add_argument("-k", type=int, default=None)
    mus.add_argument("--json", action="store_true")

    repl = sub.add_parser("repl", help="interactive dialogue")
    repl.add_argument("file")

    serve = sub.add_parser("serve", help="HTTP/JSON service")
    serve.add_argument("file")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")

    return parser


def _load_session(path: str) -> Session:
    with open(path) as handle:
        return Session(handle.read())


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


def _run(args: argparse.Namespace) -> int:
    if args.command == "solve":
        session = _load_session(args.file)
        payload = session.models_payload(args.limit)
        if args.json:
            _emit(jsonio.canonical(payload))
            return 0 if payload["models"] else 1
        if not payload["models"]:
            _emit("no answer sets")
            return 1
        for model in payload["models"]:
            _emit("{" + ", ".join(model) + "}")
        return 0

    if args.command == "check":
        session = _load_session(args.file)
        wanted = set(str(a) for a in parse_atom_list(args.model))
        models, _ = session.visible_models()
        verdict = any(set(m) == wanted for m in models)
        _emit("answer set: yes" if verdict else "answer set: no")
        return 0 if verdict else 1

    if args.command in ("why", "whynot"):
        session = _load_session(args.file)
        mode = "in" if args.command == "why" else "out"
        alternatives = getattr(args, "alternatives", 1)
        model_texts = None
        if args.model is not None:
            model_texts = [str(a) for a in parse_atom_list(args.model)]
        if args.json:
            payload = session.explain_payload(args.atom, mode, alternatives, model_texts)
            _emit(jsonio.canonical(payload))
            return 0
        graphs = session.explain_graphs(args.atom, mode, alternatives, model_texts)
        parts = []
        for idx, g in enumerate(graphs):
            header = f"alternative {idx + 1}:\n" if len(graphs) > 1 else ""
            parts.append(header + render_text(g))
        _emit("\n\n".join(parts))
        return 0

    if args.command == "contrast":
        session = _load_session(args.file)
        with open(args.space) as handle:
            space = parse_fact_space(handle.read())
        payload = session.contrast_payload(args.mode, args.target, space, args.all_k)
        if args.json:
            _emit(jsonio.canonical(payload))
        else:
            _emit(render_contrast(payload))
        return 0 if payload["found"] else 1

    if args.command == "abduce":
        session = _load_session(args.file)
        program = session.effective_program()
        observation = parse_ground_atom(args.obs)
        predicates = [p.strip() for p in args.abducibles.split(",") if p.strip()]
        pool = _abducible_pool(program, predicates)
        results = abduce(program, observation, pool)
        payload = {"hypotheses": [sorted(map(str, delta)) for delta in results]}
        if args.json:
            _emit(jsonio.canonical(payload))
        elif not results:
            _emit("no hypothesis set explains the observation")
        else:
            for delta in results:
                _emit("{" + ", ".join(sorted(map(str, delta))) + "}")
        return 0 if results else 1

    if args.command == "mus":
        session = _load_session(args.file)
        predicates = None
        if args.soft is not None:
            predicates = [p.strip() for p in args.soft.split(",") if p.strip()]
        partition = soft_partition(session.effective_program(), predicates)
        inconsistent = minimal_inconsistent_subsets(partition, args.k)
        corrections = minimal_correction_sets(partition, args.k)
        payload = {
            "soft": [str(a) for a in partition.soft],
            "minimal_inconsistent_subsets": [sorted(map(str, s)) for s in inconsistent],
            "minimal_correction_sets": [sorted(map(str, s)) for s in corrections],
        }
        if args.json:
            _emit(jsonio.canonical(payload))
        else:
            _emit("minimal inconsistent subsets:")
            for s in inconsistent or []:
                _emit("  {" + ", ".join(sorted(map(str, s))) + "}")
            if not inconsistent:
                _emit("  (none)")
            _emit("minimal correction sets:")
            for s in corrections:
                _emit("  {" + ", ".join(sorted(map(str, s))) + "}")
            if not corrections:
                _emit("  (none)")
        return 0

    if args.command == "repl":
        session = _load_session(args.file)
        repl_loop(session)
        return 0

    if args.command == "serve":
        import uvicorn

        from .service import create_app, SessionStore

        store = SessionStore()
        with open(args.file) as handle:
            initial = store.create(handle.read())
        print(f"loaded {args.file} as session {initial}", file=sys.stderr)
        uvicorn.run(create_app(store), host=args.host, port=args.port, log_level="warning")
        return 0

    raise AssertionError(f"unhandled command {args.command}")


def _abducible_pool(program, predicates):
    """Ground instances of the listed predicates over the program's universe,
    existing facts excluded."""
    from itertools import product as iproduct

    from .ground import herbrand_universe
    from .syntax import Atom

    arities = {}
    for rule in program.rules:
        for atom in rule.head_atoms:
            arities.setdefault(atom.predicate, atom.arity)
        for lit in rule.body:
            body_atoms = [lit.atom] if hasattr(lit, "atom") else [e.atom for e in lit.elements]
            for atom in body_atoms:
                arities.setdefault(atom.predicate, atom.arity)
    universe = sorted(herbrand_universe(program), key=lambda t: (t.kind, str(t.value)))
    existing = {r.head[0] for r in program.rules if r.is_fact}
    pool = []
    for predicate in predicates:
        arity = arities.get(predicate, 0)
        for args in iproduct(universe, repeat=arity):
            atom = Atom(predicate, tuple(args))
            if atom not in existing:
                pool.append(atom)
    return pool


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _run(args)
    except _NEGATIVE_ANSWERS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (XplainError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

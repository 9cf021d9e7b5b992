import io

import pytest

from xplain.repl import repl_loop
from xplain.session import Session


def test_models_and_overlay(bug_program):
    session = Session(bug_program)
    models, complete = session.visible_models()
    assert models == [["class(beetle)", "legs(6)", "eyes(2)", "wings(2)"]]
    assert complete

    session.execute("assume eyes(5).")
    models, _ = session.visible_models()
    assert any("class(fly)" in m for m in models)

    session.execute("retract eyes(2).")
    models, _ = session.visible_models()
    assert models == [["legs(6)", "wings(2)", "class(fly)", "eyes(5)"]]


def test_undo_restores_pre_command_state(bug_program):
    session = Session(bug_program)
    baseline = session.visible_models()
    session.execute("assume eyes(5).")
    assert session.visible_models() != baseline
    session.execute("undo")
    assert session.visible_models() == baseline

    # undo after a pure query also restores the pre-command snapshot
    session.execute("assume eyes(5).")
    after_assume = session.visible_models()
    session.execute("models")
    session.execute("undo")
    assert session.visible_models() == after_assume
    session.execute("undo")
    assert session.visible_models() == baseline
    assert session.execute("undo") == "nothing to undo"


def test_session_replay_reproduces_state(bug_program, tmp_path):
    session = Session(bug_program)
    for line in (
        "assume eyes(5).",
        "models",
        "retract eyes(2).",
        f"save transcript {tmp_path}/t.txt",
        "why class(fly)",
        "undo",
        "undo",
    ):
        session.execute(line)
    replayed = Session.replay(bug_program, session.history)
    assert replayed.assumed == session.assumed
    assert replayed.retracted == session.retracted
    assert replayed.visible_models() == session.visible_models()
    assert replayed.history == session.history


def test_transcript_roundtrip(bug_program, tmp_path):
    session = Session(bug_program)
    session.execute("assume eyes(5).")
    path = tmp_path / "transcript.txt"
    session.execute(f"save transcript {path}")
    lines = path.read_text().splitlines()
    assert lines == ["assume eyes(5)."]
    replayed = Session.replay(bug_program, lines)
    assert replayed.assumed == session.assumed


def test_why_inside_session_matches_payload(bug_program):
    session = Session(bug_program)
    direct = session.explain_payload("class(beetle)", "in")
    via_command = session.execute("why class(beetle) --json")
    import json

    assert json.loads(via_command) == direct


def test_errors_do_not_crash_session(bug_program):
    session = Session(bug_program)
    assert session.execute("why nonsense((").startswith("error:")
    assert session.execute("bogus command").startswith("unknown command")
    assert session.execute("assume eyes(2,3).").startswith("error:")
    # session still answers
    assert session.visible_models()[0]


def test_arity_guard(bug_program):
    session = Session(bug_program)
    out = session.execute("assume eyes(5,5).")
    assert out.startswith("error:")
    assert session.assumed == ()


def test_contrast_needs_space(bug_program):
    session = Session(bug_program)
    out = session.execute("contrast foil-becomes-brave class(fly)")
    assert "no fact space" in out


def test_contrast_via_commands(bug_program, programs_dir):
    session = Session(bug_program)
    session.execute(f"space {programs_dir}/bug.space")
    out = session.execute("contrast foil-becomes-brave class(fly)")
    assert "remove {eyes(2)}; add {eyes(5)}; distance 2" == out


def test_repl_loop_quits_and_answers(bug_program):
    out = io.StringIO()
    commands = "models\nwhy class(beetle)\nquit\n"
    session = Session(bug_program)
    repl_loop(session, io.StringIO(commands), out)
    text = out.getvalue()
    assert "{class(beetle), legs(6), eyes(2), wings(2)}" in text
    assert "class(beetle) [in]" in text


def test_repl_survives_garbage(bug_program):
    out = io.StringIO()
    session = Session(bug_program)
    repl_loop(session, io.StringIO("((((\nwhy\nmodels 0 0 0\n"), out)
    assert "xplain>" in out.getvalue()


def test_models_limit(bug_program):
    session = Session("{a; b; c}.")
    models, complete = session.visible_models(limit=2)
    assert len(models) == 2
    assert not complete

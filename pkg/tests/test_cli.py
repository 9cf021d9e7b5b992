import json

import jsonschema
import pytest

from xplain import jsonio
from xplain.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def validate(payload, schema_name):
    jsonschema.validate(payload, jsonio.load_schema(schema_name))


def test_solve_bug(capsys, programs_dir):
    code, out, _ = run_cli(capsys, "solve", str(programs_dir / "bug.lp"))
    assert code == 0
    assert out == "{class(beetle), legs(6), eyes(2), wings(2)}\n"


def test_solve_inconsistent_exit_one(capsys, programs_dir):
    code, out, _ = run_cli(capsys, "solve", str(programs_dir / "inconsistent.lp"))
    assert code == 1
    assert out == "no answer sets\n"


def test_solve_json_schema(capsys, programs_dir):
    code, out, _ = run_cli(capsys, "solve", str(programs_dir / "bug.lp"), "--json")
    assert code == 0
    payload = json.loads(out)
    validate(payload, "models_result")
    assert payload["models"] == [["class(beetle)", "legs(6)", "eyes(2)", "wings(2)"]]


def test_check(capsys, programs_dir):
    path = str(programs_dir / "bug.lp")
    code, out, _ = run_cli(capsys, "check", path, "--model", "class(beetle),legs(6),eyes(2),wings(2)")
    assert code == 0 and "yes" in out
    code, out, _ = run_cli(capsys, "check", path, "--model", "class(fly)")
    assert code == 1 and "no" in out


def test_check_choice_program_projection(capsys, tmp_path):
    path = tmp_path / "choice.lp"
    path.write_text("1 {a; b} 1.\n")
    code, out, _ = run_cli(capsys, "check", str(path), "--model", "a")
    assert code == 0


def test_why_json_validates(capsys, programs_dir):
    code, out, _ = run_cli(
        capsys, "why", str(programs_dir / "bug.lp"), "--atom", "class(beetle)", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    validate(payload, "explain_result")
    for graph in payload["graphs"]:
        validate(graph, "justification_graph")
    leaves = {
        n["atom"]
        for n in payload["graphs"][0]["nodes"]
        if n["kind"] == "atom" and n.get("sign") == "in" and n["atom"] != "class(beetle)"
    }
    assert leaves == {"legs(6)", "eyes(2)", "wings(2)"}


def test_why_with_explicit_model(capsys, programs_dir):
    code, out, _ = run_cli(
        capsys,
        "why",
        str(programs_dir / "bug.lp"),
        "--model",
        "class(beetle),legs(6),eyes(2),wings(2)",
        "--atom",
        "legs(6)",
    )
    assert code == 0
    assert "legs(6) [in]" in out


def test_whynot(capsys, programs_dir):
    code, out, _ = run_cli(
        capsys, "whynot", str(programs_dir / "bug.lp"), "--atom", "class(fly)"
    )
    assert code == 0
    assert "class(fly) [out]" in out


def test_why_atom_never_true_exits_one(capsys, programs_dir):
    code, _, err = run_cli(
        capsys, "why", str(programs_dir / "bug.lp"), "--atom", "class(fly)"
    )
    assert code == 1
    assert "error" in err


def test_contrast_bug(capsys, programs_dir):
    code, out, _ = run_cli(
        capsys,
        "contrast",
        str(programs_dir / "bug.lp"),
        "--space",
        str(programs_dir / "bug.space"),
        "--mode",
        "not-an-answer-set",
        "--target",
        "class(beetle),legs(6),eyes(2),wings(2)",
    )
    assert code == 0
    assert out == "remove {eyes(2)}; add {eyes(5)}; distance 2\n"


def test_contrast_json_schema(capsys, programs_dir):
    code, out, _ = run_cli(
        capsys,
        "contrast",
        str(programs_dir / "bug.lp"),
        "--space",
        str(programs_dir / "bug.space"),
        "--mode",
        "foil-becomes-brave",
        "--target",
        "class(fly)",
        "--json",
    )
    assert code == 0
    payload = json.loads(out)
    validate(payload, "contrast_result")
    assert payload["explanations"][0]["added"] == ["eyes(5)"]
    assert payload["explanations"][0]["removed"] == ["eyes(2)"]
    assert payload["explanations"][0]["distance"] == 2


def test_contrast_no_contrast_exits_one(capsys, tmp_path):
    program = tmp_path / "p.lp"
    program.write_text("goal :- zzz.\nf.\n")
    space = tmp_path / "p.space"
    space.write_text("f\n")
    code, out, _ = run_cli(
        capsys, "contrast", str(program), "--space", str(space),
        "--mode", "foil-becomes-brave", "--target", "goal",
    )
    assert code == 1
    assert "no minimal change found" in out


def test_abduce(capsys, tmp_path):
    program = tmp_path / "p.lp"
    program.write_text("q(1) :- h(1).\nq(2) :- h(2).\nseed(1). seed(2).\n")
    code, out, _ = run_cli(
        capsys, "abduce", str(program), "--obs", "q(1)", "--abducibles", "h", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, jsonio.load_schema("abduce_result"))
    assert payload["hypotheses"] == [["h(1)"]]


def test_mus(capsys, programs_dir):
    code, out, _ = run_cli(capsys, "mus", str(programs_dir / "inconsistent.lp"), "--json")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, jsonio.load_schema("mus_result"))
    assert payload["minimal_inconsistent_subsets"] == [["a"]]
    assert payload["minimal_correction_sets"] == [["a"]]


def test_usage_errors_exit_two(capsys, tmp_path):
    assert run_cli(capsys, "solve", str(tmp_path / "missing.lp"))[0] == 2
    bad = tmp_path / "bad.lp"
    bad.write_text("p(X) :- q(f(X)).\n")
    assert run_cli(capsys, "solve", str(bad))[0] == 2
    unsafe = tmp_path / "unsafe.lp"
    unsafe.write_text("q(1). p(X) :- not q(X).\n")
    assert run_cli(capsys, "solve", str(unsafe))[0] == 2
    assert main(["nonsense-subcommand"]) == 2


def test_capacity_exit_three(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("XPLAIN_CAPACITY", "2")
    program = tmp_path / "big.lp"
    program.write_text("q(1). q(2). q(3). p(X) :- q(X).\n")
    code, _, err = run_cli(capsys, "solve", str(program))
    assert code == 3
    assert "capacity" in err.lower() or "XPLAIN" in err

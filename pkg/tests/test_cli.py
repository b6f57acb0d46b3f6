from __future__ import annotations

import json
import subprocess
import sys

import pytest

from aspforge.cli import build_parser, main

PENGUIN = "penguin(pingu). bird(pingu).\nfly(X) :- bird(X), not -fly(X).\n-fly(X) :- penguin(X).\n"


@pytest.fixture
def lp(tmp_path):
    def write(text: str, name: str = "prog.lp"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_entail_penguin(capsys, lp):
    assert run(capsys, "entail", lp(PENGUIN), "--query", "fly(pingu)") == (0, "False\n", "")


def test_verify_not_answer_set(capsys, lp, tmp_path):
    cand = tmp_path / "c.json"
    cand.write_text('["p", "q"]')
    code, out, _ = run(capsys, "verify", lp("p :- not q. q :- not p."), "--candidate", str(cand))
    assert code == 0 and out.startswith("not an answer set")
    code, out, _ = run(capsys, "verify", lp("a :- not b."), "--candidate-text", "{a}")
    assert out == "answer set\n"


def test_solve_and_classify(capsys, lp):
    path = lp("a :- not b. b :- not a.")
    assert json.loads(run(capsys, "solve", path, "--all")[1]) == [["a"], ["b"]]
    assert json.loads(run(capsys, "solve", path)[1]) == [["a"]]
    assert json.loads(run(capsys, "classify", path)[1]) == {
        "positive": False, "stratified": False, "head_cycle_free": True}


def test_textualize(capsys, lp):
    out = run(capsys, "textualize", lp("bird(tweety). fly(X) :- bird(X), not -fly(X)."))[1]
    assert out.splitlines()[0] == "bird(tweety) is true."


def test_exit_codes(capsys, lp):
    code, _, err = run(capsys, "solve", lp("p :- q", "bad.lp"))
    assert code == 1 and "bad.lp:1:" in err
    assert run(capsys, "solve")[0] == 2
    assert run(capsys, "entail", lp("a :- not b. b :- not a."), "--query", "a")[0] == 1
    assert run(capsys, "solve", "/nonexistent.lp")[0] == 1


def test_generate_deterministic_and_no_overwrite(capsys, tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    code, _, err = run(capsys, "generate", "--task", "ase", "--num", "5", "--seed", "7", "-o", str(a))
    assert code == 0 and "seed: 7" in err
    run(capsys, "generate", "--task", "ase", "--num", "5", "--seed", "7", "-o", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert len(a.read_text().splitlines()) == 5
    assert run(capsys, "generate", "--task", "ase", "--num", "5", "--seed", "7", "-o", str(a))[0] == 2
    assert run(capsys, "generate", "--task", "ase", "--num", "5", "--seed", "7", "-o", str(a), "--force")[0] == 0


def test_seed_printed_when_omitted(capsys, tmp_path):
    code, _, err = run(capsys, "generate", "--task", "asc", "--num", "1", "-o", str(tmp_path / "x.jsonl"))
    assert code == 0 and err.startswith("seed: ")


def test_config_file_and_env(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.yaml"
    cfg.write_text("max_literals: 14\narity: [1, 2]\n")
    out = run(capsys, "generate", "--show-config", "--config", str(cfg), "--max-literals", "12")[1]
    shown = json.loads(out)
    assert shown["max_literals"] == 12 and shown["arity"] == [1, 2]
    monkeypatch.setenv("ASPFORGE_CONFIG", str(cfg))
    assert json.loads(run(capsys, "generate", "--show-config")[1])["max_literals"] == 14
    bad = tmp_path / "bad.yaml"
    bad.write_text("nonsense_key: 1\n")
    assert run(capsys, "generate", "--show-config", "--config", str(bad))[0] == 2


def test_eval_and_stats(capsys, tmp_path):
    gold = tmp_path / "g.jsonl"
    run(capsys, "generate", "--task", "asv", "--num", "6", "--seed", "3", "-o", str(gold))
    recs = [json.loads(x) for x in gold.read_text().splitlines()]
    pred = tmp_path / "p.jsonl"
    pred.write_text("".join(json.dumps({"id": r["id"], "task": "ASV", "label": "Yes"}) + "\n" for r in recs))
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "eval", "--gold", str(gold), "--pred", str(pred), "--report", str(report))
    assert code == 0 and out.startswith("ASV  macro_f1")
    assert "ASV" in json.loads(report.read_text())
    first = run(capsys, "stats", str(gold))[1]
    assert first == run(capsys, "stats", str(gold))[1]
    assert "ASV" in json.loads(run(capsys, "stats", str(gold), "--json")[1])
    pred.write_text(json.dumps({"id": "zzz", "label": "Yes"}) + "\n")
    assert run(capsys, "eval", "--gold", str(gold), "--pred", str(pred))[0] == 1


def test_help_documents_formats():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.__class__.__name__ == "_SubParsersAction")
    for name, p in sub.choices.items():
        text = p.format_help()
        assert "file formats:" in text, name
        for action in p._actions:
            for flag in action.option_strings:
                assert flag in text


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "aspforge.cli", "--help"], capture_output=True, text=True)
    assert out.returncode == 0 and "generate" in out.stdout

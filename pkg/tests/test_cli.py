import json
import subprocess
import sys
from pathlib import Path

from polycalc.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "forall X. (Y -> X) -> X", "--json")
    data = json.loads(out)
    assert code == 0 and data["fragments"]["L2RP"] and not data["fragments"]["LP"]


def test_check(capsys):
    code, out, _ = run(capsys, "check", "--ctx", "x: forall X. X", "x [Y]", "--system", "NI2AT")
    assert code == 0 and out.strip() == "Y"
    code, _, err = run(capsys, "check", "--ctx", "x: forall X. X", "x [Y -> Z]", "--system", "NI2AT")
    assert code == 1 and "NonAtomicWitness" in err


def test_check_files_and_judgment(capsys, tmp_path):
    ctx, term = tmp_path / "ctx.txt", tmp_path / "term.txt"
    ctx.write_text("x : forall X. X\n")
    term.write_text("x [Y]\n")
    code, out, _ = run(capsys, "check", "--system", "NI2AT", "--ctx", str(ctx), str(term),
                       "--emit-judgment", "json")
    data = json.loads(out)
    assert code == 0 and data == {"ctx": {"x": "forall X. X"}, "term": "x [Y]", "type": "Y", "system": "NI2AT"}
    code, out, _ = run(capsys, "check", "x: Y; f: Y -> Z |- f x")
    assert code == 0 and out.strip() == "Z"


def test_classify_single_fragment(capsys):
    assert run(capsys, "classify", "forall X. (Y -> X) -> X", "--fragment", "L2RP")[1].strip() == "true"
    assert run(capsys, "classify", "Y \\/ Z", "--fragment", "L2RP")[1].strip() == "false"
    assert run(capsys, "classify", "Y", "--fragment", "NOPE")[0] == 2


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "Y -> Z", "--json")
    data = json.loads(out)
    assert data["atom"] == "Z" and data["intro"].startswith("\\")
    assert json.loads(run(capsys, "expand", "--formula", "Y -> Z", "--json")[1]) == data
    code, out, _ = run(capsys, "expand", "Y -> X", "--functor", "X", "--context", "f []")
    assert code == 0 and "f" in out


def test_translate(capsys):
    code, _, err = run(capsys, "translate", "--to", "ESF", "--ctx", "x: Y \\/ Z",
                       "case#or[Y](x; y => y | z => z)", "--typed")
    assert code == 2 and "error:" in err  # the second branch has type Z
    code, out, _ = run(capsys, "translate", "--to", "RP", "--ctx", "y: Y", "inj#or.1[Y, Z](y)", "--typed", "--json")
    data = json.loads(out)
    assert code == 0 and data["type"].startswith("forall X.")


def _replay_all(capsys, tmp_path, traces):
    for name, tr in traces.items():
        f = tmp_path / f"{name}.json"
        f.write_text(json.dumps(tr))
        code, out, _ = run(capsys, "replay", str(f))
        assert code == 0 and "verifies" in out, name


def test_translate_modes_and_traces(capsys, tmp_path):
    judgment = tmp_path / "j.txt"
    judgment.write_text("x: Y \\/ Z |- case#or[Y \\/ Z](x; a => inj#or.1[Y, Z](a) | b => inj#or.2[Y, Z](b))")
    code, out, _ = run(capsys, "translate", "--mode", "ff", "--then-normalize", "betaeta", str(judgment),
                       "--emit-trace", "json")
    data = json.loads(out)
    assert code == 0 and data["translation"] == "FF_TOTAL" and data["normal_form"] == "x"
    assert set(data["traces"]) == {"normalize", "ff_to_eps", "eps_to_esf"}
    _replay_all(capsys, tmp_path, data["traces"])
    code, out, _ = run(capsys, "translate", "--mode", "eps", "x: forall X. (Y -> X) -> X |- x [Y -> Z]",
                       "--emit-trace", "json")
    data = json.loads(out)
    assert code == 0 and data["translation"] == "EPS" and set(data["traces"]) == {"eta_eps"}
    _replay_all(capsys, tmp_path, data["traces"])
    code, _, err = run(capsys, "translate", "--mode", "rp", "y: Y |- y", "--emit-trace", "json")
    assert code == 2 and "--then-normalize" in err


def test_normalize_and_equiv_rules(capsys):
    assert run(capsys, "normalize", "--rules", "betaeta", "\\x:Y. (\\y:Y. f y) x")[1].strip() == "f"
    assert run(capsys, "normalize", "--rules", "beta", "\\x:Y. (\\y:Y. f y) x")[1].strip() == "\\x:Y. f x"
    assert run(capsys, "equiv", "\\x:Y. f x", "f", "--rules", "beta")[0] == 1
    assert run(capsys, "equiv", "\\x:Y. f x", "f", "--rules", "betaeta")[0] == 0
    code, out, _ = run(capsys, "equiv", "\\x:Y. f x", "f", "--bounded", "4", "--ctx", "f: Y -> Z", "--json")
    data = json.loads(out)
    assert code == 0 and data["equivalent"] and len(data["trace"]["steps"]) <= 4
    assert run(capsys, "equiv", "f", "g", "--bounded", "4", "--ctx", "f: Y -> Z; g: Y -> Z")[0] == 1


def test_normalize_and_equiv(capsys):
    code, out, _ = run(capsys, "normalize", "(\\x:Y. x) y")
    assert out.strip() == "y"
    assert run(capsys, "equiv", "t", "\\x:Y. t x")[0] == 0
    assert run(capsys, "equiv", "t", "s")[0] == 1


def test_replay(capsys, tmp_path):
    code, out, _ = run(capsys, "replay", str(FIXTURES / "conjunction_eta.trace.json"))
    assert code == 0 and "verifies" in out
    data = json.loads((FIXTURES / "conjunction_eta.trace.json").read_text())
    data["steps"][0]["address"] = [5]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "replay", str(bad), "--json")
    assert code == 1 and json.loads(out)["failed_at"] == 0


def test_kripke(capsys):
    code, out, _ = run(capsys, "kripke", "--formula", "Y \\/ Z")
    data = json.loads(out)
    assert code == 0 and data["forced_at_bottom"] is False and set(data) >= {"worlds", "leq", "D", "g"}
    code, out, _ = run(capsys, "kripke", "--formula", "(forall X. (Y -> X) -> (Z -> X) -> X) -> Y \\/ Z",
                       "--search", "3")
    data = json.loads(out)
    assert code == 0 and len(data["worlds"]) == 3
    code, out, _ = run(capsys, "kripke", "--formula", "Y -> Y", "--search", "2")
    assert code == 1 and json.loads(out)["countermodel"] is None


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "conjunction-eta-chain", "--suite", "kripke-countermodel")
    assert code == 0 and out.count("PASS") == 2
    code, out, _ = run(capsys, "verify", "--suite", "esf-conversion-equivalence", "--size", "4", "--json")
    assert code == 0 and json.loads(out)[0]["ok"]
    code, _, err = run(capsys, "verify", "--suite", "no-such-suite")
    assert code == 2 and "unknown suite" in err
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0 and "gamma-plus-counterexample" in out


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "polycalc", "normalize", "(/\\X. \\x:X. x) [Y]"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "\\x:Y. x"

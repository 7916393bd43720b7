import json

from quadgb.cli import AnalysisReport, main

from conftest import data_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_pair(capsys):
    code, out, _ = run(capsys, "--json", "analyze", data_path("pair.ideal"))
    assert code == 0
    d = json.loads(out)
    assert sorted((c["form"], c["rank"]) for c in d["square_zero"]) == [("t", 2), ("y", 2)]
    assert d["witness"]["kind"] == "witness"
    rep = AnalysisReport.from_json(d)
    assert rep.to_json() == d


def test_analyze_text_and_flag_position(capsys):
    code, out, _ = run(capsys, "analyze", data_path("line.ideal"), "--p", "11")
    assert code == 0 and "F_11" in out and "L-case4" in out


def test_analyze_net15(capsys):
    code, out, _ = run(capsys, "--json", "analyze", data_path("net_15.ideal"))
    d = json.loads(out)
    assert code == 0 and d["witness"]["kind"] == "ci_exception"
    assert d["witness"]["verdict"] == "NotGQuadratic" and d["net"]["type"] == 15


def test_parse_error(capsys, tmp_path):
    f = tmp_path / "bad.ideal"
    f.write_text("field 101\nvars x,y\nx^^2\n")
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 1 and "line 3" in err


def test_hypothesis_violation(capsys, tmp_path):
    f = tmp_path / "big.ideal"
    f.write_text("field 101\nvars x,y,z,w\nx^2\ny^2\nz^2\nw^2\n")
    code, out, _ = run(capsys, "witness", str(f))
    assert code == 2 and "hypothesis" in out


def test_usage_errors(capsys):
    assert run(capsys, "corpus", "--p", "2", "--count", "1")[0] == 1
    assert run(capsys, "corpus", "--n", "3")[0] == 1
    assert run(capsys, "bogus")[0] == 1


def test_witness_deterministic(capsys):
    path = data_path("triple.ideal")
    a = run(capsys, "--json", "--seed", "3", "witness", path)[1]
    b = run(capsys, "--json", "--seed", "3", "witness", path)[1]
    assert a == b and json.loads(a)["kind"] == "witness"


def test_nets_commands(capsys):
    code, out, _ = run(capsys, "nets", "table", "--csv")
    assert code == 0 and len(out.strip().splitlines()) == 16
    code, out, _ = run(capsys, "--json", "nets", "show", "6")
    assert json.loads(out)["certificate"]["coordinates"] == "changed"
    assert run(capsys, "nets", "show", "15", "--j", "1")[0] == 1
    assert run(capsys, "nets", "show", "16")[0] == 1


def test_koszul_command(capsys):
    code, out, _ = run(capsys, "--json", "koszul", data_path("net_14.ideal"), "--max-i", "4")
    d = json.loads(out)
    assert code == 0 and d["first_nonlinear"] == [3, 4] and d["euler_check"]


def test_corpus_command(capsys):
    code, out, _ = run(capsys, "--json", "corpus", "--n", "5", "--count", "2", "--seed", "1")
    assert code == 0 and json.loads(out)["witness"] == 2

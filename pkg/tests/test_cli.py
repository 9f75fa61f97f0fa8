import json

import pytest

from pardec.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse(capsys):
    assert run(capsys, "parse", "a . b.0 +(c.0||d)") == (0, "a.b.0 + c.0 || d.0\n", "")


def test_parse_error_is_usage_error(capsys):
    code, out, err = run(capsys, "parse", "a.(")
    assert code == 2 and "line 1, column 4" in err


def test_stdin_and_file(capsys, monkeypatch, tmp_path):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO("a*tau.b.0\n"))
    assert run(capsys, "norm", "-")[:2] == (0, "1\n")
    f = tmp_path / "e.txt"
    f.write_text("a.0 || b.0")
    assert run(capsys, "norm", f"@{f}")[:2] == (0, "2\n")
    assert run(capsys, "norm", f"@{tmp_path / 'missing'}")[0] == 2


def test_norm_and_classify(capsys):
    assert run(capsys, "norm", "0")[:2] == (0, "0\n")
    assert run(capsys, "norm", "a*0")[:2] == (0, "inf\n")
    code, out, _ = run(capsys, "classify", "a*tau.b.0", "--output", "json")
    assert code == 0
    assert json.loads(out) == {"weakly_normed": True, "totally_normed": True,
                               "weakly_bounded": False, "weak_norm": 1, "weak_depth": "inf"}


def test_equiv(capsys):
    code, out, _ = run(capsys, "equiv", "a*0", "a*0 || a*0", "--semantics=branching")
    assert code == 0 and out.startswith("equivalent")
    code, out, _ = run(capsys, "equiv", "a.0", "b.0", "--output=json")
    assert code == 1 and json.loads(out)["equivalent"] is False


def test_lts_formats(capsys):
    code, out, _ = run(capsys, "lts", "a.0 || b.0")
    assert code == 0 and out.startswith("digraph") and out.count("->") == 4
    code, out, _ = run(capsys, "lts", "a.0 || b.0", "--output", "json")
    assert len(json.loads(out)["transitions"]) == 4


def test_state_limit(capsys, monkeypatch):
    assert run(capsys, "lts", "a.0 || b.0", "--state-limit", "3")[0] == 1
    monkeypatch.setenv("PARDEC_STATE_LIMIT", "3")
    assert run(capsys, "lts", "a.0 || b.0")[0] == 1
    assert run(capsys, "lts", "a.0 || b.0", "--state-limit", "10")[0] == 0
    monkeypatch.setenv("PARDEC_STATE_LIMIT", "lots")
    assert run(capsys, "lts", "0")[0] == 2


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "a*tau.b.0 || a*tau.b.0", "--output", "json")
    data = json.loads(out)
    assert code == 0 and data["status"] == "multiple"
    code, out, _ = run(capsys, "decompose", "tau*0", "--semantics", "weak")
    assert out == "unique: {}\n"


def test_axioms(capsys):
    code, out, _ = run(capsys, "axioms", "a*tau.b.0 || a*tau.b.0")
    assert code == 0
    assert "strictly_compatible: fail (witness: b.0, a*tau.b.0, a*tau.b.0)" in out
    code, out, _ = run(capsys, "axioms", "a*0", "--output", "json")
    data = json.loads(out)
    assert data["archimedean"]["status"] == "fail"
    assert run(capsys, "axioms", "a*0", "--normed-only")[0] == 2


@pytest.mark.parametrize("target", ["fig1", "ex1", "ex2"])
def test_repro(capsys, target):
    code, out, _ = run(capsys, "repro", target)
    assert code == 0 and "FAIL" not in out and out.count("ok") >= 4


def test_repro_json_is_stable(capsys):
    first = run(capsys, "repro", "ex2", "--output", "json")[1]
    second = run(capsys, "repro", "ex2", "--output", "json")[1]
    assert first == second and all(item["ok"] for item in json.loads(first))


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "repro", "ex9")[0] == 2
    assert run(capsys, "equiv", "a.0", "--semantics", "fuzzy")[0] == 2
    assert run(capsys, "--help")[0] == 0

import json

import pytest

from ringlab import suite
from ringlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_prints_pretty_form(capsys):
    code, out, _ = run(capsys, "parse", "Z/2[x]/(x^4+x)")
    assert code == 0 and "Z/2[x]/(x^4 + x)" in out


def test_syntax_error_exit_code(capsys):
    code, _, err = run(capsys, "parse", "Z/2 * ")
    assert code == 3 and "syntax error" in err


def test_usage_errors_exit_3(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 3
    capsys.readouterr()
    with pytest.raises(SystemExit) as exc:
        main(["analyze"])
    assert exc.value.code == 3


def test_reproduce_rejects_non_prime(capsys):
    code, _, err = run(capsys, "reproduce", "--example", "7.4", "--p", "9")
    assert code == 3 and "9" in err


def test_cohn_rejects_non_semiprime_ideal(capsys):
    code, _, err = run(capsys, "cohn", "--ring", "Z/4", "--ideal", "0")
    assert code == 3 and "NotSemiprime" in err


def test_analyze_json(capsys, tmp_path):
    path = tmp_path / "a.json"
    code, _, _ = run(capsys, "analyze", "--ambient", "Z/2 * Z/2", "--json", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["SL"] is True


def test_lattice_and_cohn_succeed(capsys):
    code, out, _ = run(capsys, "lattice", "--ambient", "Z/2 * Z/2 * Z/2")
    assert code == 0 and out
    code, out, _ = run(capsys, "cohn", "--ring", "Z/4", "--degree", "2")
    assert code == 0
    assert all(c["verdict"] != "counterexample" for c in json.loads(out)["checks"])


def test_reproduce_examples(capsys):
    code, out, _ = run(capsys, "reproduce", "--example", "7.6")
    assert code == 0 and out.count("SL=True") == 3
    code, out, _ = run(capsys, "reproduce", "--example", "7.5")
    assert code == 0 and "injective SL morphisms: 2" in out
    code, out, _ = run(capsys, "reproduce", "--example", "7.4", "--p", "7")
    assert code == 0 and "1 + X + X^3" in out


def test_verify_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify", "--suite", "sl-characterization", "--max-size", "8", "--json", str(a))[0] == 0
    assert run(capsys, "verify", "--suite", "sl-characterization", "--max-size", "8", "--json", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("name", ["sl-characterization", "stability", "lattice-closures", "cohn"])
def test_findings_replay(name):
    findings = suite.run_suite(name, max_size=8, seed=0)
    assert findings
    for f in findings:
        assert suite.replay(f.to_dict()) == f.verdict, f.key


def test_pair_description_round_trip():
    for entry in suite.corpus(max_size=8, seed=0)[:6]:
        for p in entry.pairs()[:4]:
            q = suite.Pair.from_description(p.describe())
            assert set(q.R.members.tolist()) == set(p.R.members.tolist())
            assert set(q.T.members.tolist()) == set(p.T.members.tolist())
            assert q.sl == p.sl

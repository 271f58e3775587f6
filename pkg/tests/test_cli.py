import json
import subprocess
import sys

import pytest

from serreweights.cli import run


def call(argv, capsys):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_weight_set_example(capsys):
    code, out, _ = call(["weight-set", "--p", "5", "--r", "1", "--reducible", "--psi1", "2",
                         "--psi2", "0", "--regular"], capsys)
    assert code == 0
    rows = json.loads(out)["weights"]
    row = next(x for x in rows if x["a"] == [0] and x["b"] == [2])
    assert row["witnesses"] == [[1]]


def test_weight_set_digits_input(capsys):
    a = call(["weight-set", "--p", "5", "--r", "2", "--reducible", "--psi1-digits", "2,2",
              "--psi2", "0"], capsys)
    b = call(["weight-set", "--p", "5", "--r", "2", "--reducible", "--psi1", "12",
              "--psi2", "0"], capsys)
    assert a[0] == b[0] == 0 and a[1] == b[1]


def test_type_cuspidal_example(capsys):
    code, out, _ = call(["type", "--p", "5", "--r", "1", "--a", "0", "--b", "2",
                         "--full-J", "2"], capsys)
    d = json.loads(out)
    assert code == 0 and sorted([d["type"]["theta"], d["type"]["theta_conj"]]) == [9, 21]
    assert d["agree"] is True and d["J"] == [1]


def test_type_reducible(capsys):
    code, out, _ = call(["type", "--p", "5", "--r", "1", "--a", "0", "--b", "2", "--J", "1"],
                        capsys)
    d = json.loads(out)
    assert d["type"] == {"kind": "ps", "chi1": 0, "chi2": 1} and d["c"] == [1]


def test_jh_variants(capsys):
    code, out, _ = call(["jh", "--p", "5", "--r", "1", "--chi1", "0", "--chi2", "1"], capsys)
    d = json.loads(out)
    assert [(f["a"], f["b"]) for f in d["factors"]] == [([1], [4]), ([0], [2])]
    assert d["dimension"] == d["expected_dimension"] == 6
    code, out, _ = call(["jh", "--p", "5", "--r", "1", "--c", "2", "--psi", "3"], capsys)
    assert [(f["a"], f["b"]) for f in json.loads(out)["factors"]] == [([2], [2]), ([0], [2])]
    code, out, _ = call(["jh", "--p", "7", "--r", "2", "--a", "0,0", "--b", "2,3",
                         "--full-J", "3"], capsys)
    d = json.loads(out)
    assert code == 0 and d["dimension"] == 48


def test_compat(capsys):
    code, out, _ = call(["compat", "--p", "5", "--r", "1", "--irreducible", "--theta", "10",
                         "--a", "0", "--b", "2"], capsys)
    d = json.loads(out)
    assert d["witnesses"] == [[0], [1]] and d["ordinary"] is False
    code, out, _ = call(["compat", "--p", "5", "--r", "1", "--reducible", "--psi1", "1",
                         "--psi2", "0", "--a", "0", "--b", "2"], capsys)
    d = json.loads(out)
    assert d["compatible"] is False and d["ordinary"] is None


def test_fl(capsys):
    code, out, _ = call(["fl", "--p", "5", "--r", "1", "--b", "2", "--J", "1"], capsys)
    d = json.loads(out)
    assert code == 0 and d["quantities"]["n"] == [12]
    assert all(x["status"] == "pass" for x in d["properties"])


def test_verify_example(capsys):
    code, out, err = call(["verify", "fl-properties", "--p", "5", "--r", "2", "--jobs", "1"], capsys)
    d = json.loads(out)
    assert code == 0 and d["violation_count"] == 0 and d["status"] == "pass"
    assert "wall" not in out and "seconds" not in out
    assert "fl-properties: pass" in err


def test_verify_lemma_r1_reports_skip(capsys):
    code, out, _ = call(["verify", "lemma-compat", "--p", "5", "--r", "1", "--jobs", "1"], capsys)
    d = json.loads(out)
    assert code == 0 and d["summary"][0]["skipped"]


def test_verify_truncation_is_reported(capsys):
    code, out, _ = call(["verify", "typeswts", "--p", "13", "--r", "3", "--jobs", "1",
                         "--max-seconds", "0"], capsys)
    d = json.loads(out)
    assert code == 0 and d["truncated"] and d["status"] == "partial"
    assert d["summary"][0]["complete"] is False


@pytest.mark.parametrize("argv", [
    ["weights", "--p", "4", "--r", "1"],
    ["weights", "--p", "3", "--r", "20"],
    ["weights", "--p", "x", "--r", "1"],
    ["bogus", "--p", "5", "--r", "1"],
    ["weight-set", "--p", "5", "--r", "1", "--reducible", "--psi1", "2"],
    ["weight-set", "--p", "5", "--r", "1", "--reducible", "--psi1", "a", "--psi2", "0"],
    ["weight-set", "--p", "5", "--r", "1", "--irreducible", "--theta", "6"],
    ["type", "--p", "5", "--r", "1", "--a", "0", "--b", "4", "--J", "1"],
    ["type", "--p", "5", "--r", "1", "--a", "0", "--b", "2", "--full-J", "3"],
    ["jh", "--p", "5", "--r", "1", "--chi1", "1", "--chi2", "1"],
    ["verify", "nope", "--p", "5", "--r", "1"],
    ["verify", "typeswts", "--p", "5,4", "--r", "1"],
    [],
])
def test_invalid_input_exit_2(argv, capsys):
    code, out, err = call(argv, capsys)
    assert code == 2 and out == "" and err


def test_table_output(capsys):
    code, out, _ = call(["weights", "--p", "5", "--r", "1", "--regular", "--table"], capsys)
    assert code == 0 and out.startswith("p: 5") and "weights:" in out


def test_out_file(tmp_path, capsys):
    f = tmp_path / "w.json"
    code, out, _ = call(["weights", "--p", "5", "--r", "1", "--out", str(f)], capsys)
    assert code == 0 and out == "" and json.loads(f.read_text())["count"] == 20


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "serreweights", "weights", "--p", "5",
                          "--r", "1", "--regular"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["count"] == 8


def test_exit_1_on_violations(monkeypatch, capsys):
    import serreweights.verify as V
    orig = V.SUITES["lift-model"]
    fake = V.Suite("lift-model", orig.items,
                   lambda ctx, items: (1, [V._v(ctx, "x", {})], {}), "fake")
    monkeypatch.setitem(V.SUITES, "lift-model", fake)
    code, out, _ = call(["verify", "lift-model", "--p", "5", "--r", "1", "--jobs", "1"], capsys)
    assert code == 1 and json.loads(out)["status"] == "fail"

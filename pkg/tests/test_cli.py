import json

import pytest

from klein_actions.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def doc(out):
    d = json.loads(out)
    assert d.pop("schema") == 1
    return d


def test_bs_reduce(capsys):
    code, out, _ = run(capsys, "bs", "reduce", "bab")
    assert code == 0 and doc(out) == {"p": 1, "q": 0}


def test_plane_index(capsys):
    code, out, _ = run(capsys, "plane", "index", "--k", "2")
    assert code == 0 and doc(out) == {"index": -1.0}


def test_bs_roundtrip(capsys):
    _, out, _ = run(capsys, "bs", "mul", "a^3 b^2", "b a")
    x = doc(out)
    _, out, _ = run(capsys, "bs", "inv", json.dumps(x))
    _, out, _ = run(capsys, "bs", "mul", json.dumps(x), json.dumps(doc(out)))
    assert doc(out) == {"p": 0, "q": 0}


@pytest.mark.parametrize("argv,field", [
    (("bs", "inv", '{"p": 1}'), "'q'"),
    (("g2", "mul", '{"w": "a"}', "b"), "'n'"),
    (("g1", "order", '{"linear": "[+,+,+]", "t": ["0", "?", "0"]}'), "'t'"),
])
def test_malformed_json_names_field(capsys, argv, field):
    code, out, err = run(capsys, *argv)
    assert code == 2 and field in json.loads(err)["error"]


def test_unparseable_json(capsys):
    code, _, err = run(capsys, "bs", "inv", "{nope")
    assert code == 2 and "malformed JSON" in err


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bs", "frobnicate"])
    assert exc.value.code == 2


def test_g2_commands(capsys):
    _, out, _ = run(capsys, "g2", "reduce", "bg")
    x = doc(out)
    assert x == {"w": "g^-1", "n": 1}
    _, out, _ = run(capsys, "g2", "mul", json.dumps(x), "b^-1")
    assert doc(out) == {"w": "g^-1", "n": 0}
    _, out, _ = run(capsys, "g2", "compare", "a", "e")
    assert doc(out) == {"result": "greater"}


def test_g1_commands(capsys):
    _, out, _ = run(capsys, "g1", "eval", "a^2")
    assert doc(out) == {"linear": "[+,+,+]", "t": ["1", "0", "0"]}
    _, out, _ = run(capsys, "g1", "order", "ab")
    assert doc(out) == {"order": "infinite"}
    code, out, _ = run(capsys, "g1", "verify")
    assert code == 0 and doc(out)["pass"]


def test_plane_apply_csv(capsys, tmp_path):
    src = tmp_path / "in.csv"
    src.write_text("theta,r\n0.0,0.0\n1.0,2.0\n")
    dst = tmp_path / "out.csv"
    code, _, _ = run(capsys, "plane", "apply", "a", "--in", str(src), "--format", "csv", "--out", str(dst))
    rows = dst.read_text().splitlines()
    assert code == 0 and rows[0] == "theta,r" and len(rows) == 3
    assert float(rows[1].split(",")[0]) == pytest.approx(1.5707963267948966)


def test_plane_checks(capsys):
    code, out, _ = run(capsys, "plane", "wandering", "--theta", "0.7854", "--r", "0", "--radius", "0.1")
    assert code == 0 and doc(out)["status"] == "pass"
    code, out, _ = run(capsys, "plane", "wandering", "--theta", "0", "--r", "0", "--radius", "0.5")
    assert code == 1 and doc(out)["status"] == "precondition_failed"
    code, out, _ = run(capsys, "plane", "nonwandering", "--theta", "1.5708", "--r", "0", "--radius", "0.3")
    assert code == 0 and doc(out)["found"]
    code, out, _ = run(capsys, "plane", "index", "--k", "3", "--conjugator-seed", "7", "--verbose")
    assert code == 0 and doc(out)["index"] == -1.5
    code, out, _ = run(capsys, "plane", "verify", "--samples", "500")
    assert code == 0 and doc(out)["pass"]


def test_plane_limitset(capsys):
    code, out, _ = run(capsys, "plane", "limitset", "--theta", "1.5708", "--r", "0", "--radius", "0.2",
                       "--n-max", "6", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "theta,r" and len(lines) > 10
    code, out, _ = run(capsys, "plane", "limitset", "--theta", "0", "--r", "0", "--radius", "0.5")
    assert code == 1 and "not free" in doc(out)["error"]


def test_circle_commands(capsys):
    code, out, _ = run(capsys, "circle", "figure3")
    d = doc(out)
    assert code == 0 and d["lemma32"]["status"] == "pass"
    code, out, _ = run(capsys, "circle", "figure3", "--format", "csv", "--grid", "8")
    assert out.splitlines()[0] == "x,f(x)-x" and len(out.splitlines()) == 9
    code, out, _ = run(capsys, "circle", "g1-action")
    assert code == 0
    _, out, _ = run(capsys, "circle", "rotnum", "--map", "g1-b")
    assert doc(out)["rotation_number"] == pytest.approx(0.5, abs=2e-4)
    code, out, _ = run(capsys, "circle", "lemma32", "--pair", "rotation", "--rho", "0.5")
    assert code == 1 and doc(out)["status"] == "precondition_failed"


def test_verify_subset_deterministic(capsys):
    _, out1, _ = run(capsys, "verify", "all", "--case", "2", "--case", "9", "--seed", "5")
    _, out2, _ = run(capsys, "verify", "all", "--case", "9", "--case", "2", "--seed", "5")
    d1, d2 = doc(out1), doc(out2)
    assert [s["id"] for s in d1["suites"]] == [2, 9]
    for s1, s2 in zip(d1["suites"], d2["suites"]):
        assert s1["report"] == s2["report"]


def test_verify_rejects_unknown_case(capsys):
    code, _, _ = run(capsys, "verify", "all", "--case", "13")
    assert code == 2


def test_help_documents_csv_columns(capsys):
    with pytest.raises(SystemExit):
        main(["circle", "figure3", "--help"])
    assert "x,f(x)-x" in capsys.readouterr().out

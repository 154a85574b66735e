import io
import json

import numpy as np
import pytest

from secondkind.cli import main
from secondkind.io import TensorFileError, dumps_tensor, loads_tensor, read_tensor, tensor_to_dict, write_tensor
from secondkind.kahler import KahlerOperator
from secondkind.models import random_curvature, random_kahler, zoo


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


# -- tensor files ----------------------------------------------------------------

@pytest.mark.parametrize("name", list(zoo()))
def test_round_trip_zoo(name):
    R = zoo()[name]
    back = loads_tensor(dumps_tensor(R))
    scale = np.abs(R.R).max(initial=0.0)
    assert np.abs(back.R - R.R).max(initial=0.0) <= 1e-15 * max(scale, 1.0)
    assert isinstance(back, KahlerOperator) == isinstance(R, KahlerOperator) or not np.any(R.R)


def test_round_trip_random_exact():
    for R in (random_kahler(3, 1), random_curvature(5, 2)):
        assert np.array_equal(loads_tensor(dumps_tensor(R)).R, R.R)


def test_entries_canonical_one_based():
    d = tensor_to_dict(zoo()["CP1(4)"])
    assert d["entries"] == [[1, 2, 1, 2, 4.0]]
    assert d["kahler"] and d["m"] == 1


def _doc(n, entries, **kw):
    d = {"format": "secondkind-tensor", "version": 1, "n": n, "entries": entries}
    d.update(kw)
    return json.dumps(d)


def test_reader_accepts_permuted_entries():
    a = loads_tensor(_doc(2, [[1, 2, 1, 2, 1.0]]))
    b = loads_tensor(_doc(2, [[2, 1, 1, 2, -1.0]]))
    assert np.array_equal(a.R, b.R)


@pytest.mark.parametrize(
    "text, match",
    [
        ("not json", "invalid JSON"),
        (json.dumps({"format": "other"}), "not a"),
        (_doc(3, [[1, 1, 2, 3, 1.0]]), "antisymmetry"),
        (_doc(3, [[1, 2, 1, 4, 1.0]]), "out of range"),
        (_doc(3, [[1, 2, 1, 2]]), "not \\[i, j, k, l, value\\]"),
        (_doc(3, [[1, 2, 1, 2, "x"]]), "finite"),
        (_doc(3, [[1, 2, 1, 2, 1.0], [2, 1, 2, 1, 2.0]]), "conflicting"),
        (_doc(4, [[1, 2, 3, 4, 1.0]]), "Bianchi"),
        (_doc(4, [[1, 2, 1, 2, 1.0]], kahler=True), "flagged Kahler"),
        (_doc(3, [], kahler=True), "odd"),
        (_doc(2, [], version=9), "version"),
        (_doc(2, [], convention="other"), "convention"),
    ],
)
def test_reader_rejects(text, match):
    with pytest.raises(TensorFileError, match=match):
        loads_tensor(text)


def test_read_missing_file(tmp_path):
    with pytest.raises(TensorFileError, match="cannot read"):
        read_tensor(tmp_path / "nope.json")


# -- CLI ---------------------------------------------------------------------------

def test_cli_model_cp(tmp_path):
    out = tmp_path / "cp.json"
    code, text = run("model", "cp", "--m", "2", "--c", "4", "-o", str(out))
    assert code == 0
    assert "S=24" in text and "kahler=true" in text and "N=9" in text
    assert read_tensor(out).n == 4


def test_cli_model_flat_empty(tmp_path):
    out = tmp_path / "f.json"
    assert run("model", "flat", "--n", "4", "-o", str(out))[0] == 0
    assert json.loads(out.read_text())["entries"] == []


def test_cli_model_random_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run("model", "random", "--m", "2", "--seed", "7", "-o", str(a))
    run("model", "random", "--m", "2", "--seed", "7", "-o", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_cli_model_usage_errors(tmp_path, capsys):
    assert run("model", "product", "--factors", "cp:2", "-o", str(tmp_path / "x.json"))[0] == 2
    assert run("model", "random", "-o", str(tmp_path / "x.json"))[0] == 2
    assert run("model", "bogus")[0] == 2
    assert run("nonsense")[0] == 2


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, argv in {
        "cp2": ["cp", "--m", "2"],
        "s2r": ["product", "--factors", "sphere:2:1,flat:1"],
        "flat": ["flat", "--n", "4"],
        "cp11": ["product", "--factors", "cp:1:4,cp:1:4"],
    }.items():
        p = tmp_path / f"{name}.json"
        assert run("model", *argv, "-o", str(p))[0] == 0
        paths[name] = str(p)
    return paths


def test_cli_spectrum_text(files):
    code, text = run("spectrum", "--input", files["cp2"])
    assert code == 0
    assert "eigenvalues: -2 -2 -2 4 4 4 4 4 4" in text
    assert "threshold: 4.5" in text
    assert "eigenvalues: -0.333333333333 0 0 1 1" in run("spectrum", "--input", files["s2r"])[1]
    assert "eigenvalues: 0 0 0 0 0 0 0 0 0" in run("spectrum", "--input", files["flat"])[1]


def test_cli_spectrum_json_csv(files, tmp_path):
    code, text = run("spectrum", "--input", files["cp11"], "--json", "--report", str(tmp_path / "r.json"))
    body = json.loads(text)
    assert code == 0 and body["threshold"] == pytest.approx(6.0)
    rep = json.loads((tmp_path / "r.json").read_text())
    assert rep["format"] == "secondkind-report" and len(rep["input_digest"]) == 64
    code, text = run("spectrum", "--input", files["s2r"], "--csv")
    assert text.splitlines()[0] == "index,eigenvalue" and len(text.splitlines()) == 6


def test_cli_spectrum_bad_input(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(_doc(4, [[1, 2, 3, 4, 1.0]]))
    assert run("spectrum", "--input", str(p))[0] == 2
    assert run("spectrum", "--input", str(tmp_path / "missing.json"))[0] == 2


def test_cli_check(files):
    code, text = run("check", "--input", files["cp2"], "--alpha", "4.5")
    assert code == 0 and text.startswith("nonnegative (f=0,")
    code, text = run("check", "--input", files["cp2"], "--alpha", "4.4")
    assert code == 0 and text.startswith("indefinite (f=-")
    assert run("check", "--input", files["flat"], "--alpha", "1")[1].startswith("zero")
    assert run("check", "--input", files["cp2"], "--alpha", "9.5")[0] == 2
    assert run("check", "--input", files["cp2"], "--alpha", "0.5")[0] == 2


def test_cli_curvatures(files):
    code, text = run("curvatures", "--input", files["cp2"], "--samples", "200")
    assert code == 0
    lines = {ln.split()[0]: ln for ln in text.splitlines()}
    assert "min=               4 max=               4" in lines["hsc"]
    assert "min=               2 max=               2" in lines["orth_bisec"]
    code, text = run("curvatures", "--input", files["cp11"], "--json", "--samples", "500")
    assert json.loads(text)["ric_perp"]["min"] == pytest.approx(0.0, abs=1e-6)
    code, text = run("curvatures", "--input", files["flat"], "--csv", "--samples", "50")
    rows = [r.split(",") for r in text.splitlines()[1:]]
    assert all(float(v) == 0.0 for r in rows for v in r[1:])
    assert run("curvatures", "--input", files["s2r"])[0] == 2


def test_cli_verify_models(tmp_path):
    rep = tmp_path / "rep.json"
    code, text = run("verify", "--suite", "models", "--m", "2,3", "--report", str(rep))
    assert code == 0 and "PASS" in text
    d = json.loads(rep.read_text())
    assert d["pass"] and d["replay"]["m"] == [2, 3]


def test_cli_verify_identities_and_props(tmp_path):
    rep = tmp_path / "rep.json"
    assert run("verify", "--suite", "identities", "--m", "2", "--trials", "5", "--seed", "1", "--report", str(rep))[0] == 0
    assert run("verify", "--suite", "props", "--m", "2", "--trials", "2", "--samples", "300", "--report", str(rep))[0] == 0


def test_cli_verify_failure_exit(tmp_path):
    # an impossible tolerance makes the chains fail
    code, text = run("verify", "--suite", "identities", "--m", "2", "--trials", "1", "--tol", "-1", "--report", str(tmp_path / "r.json"))
    assert code == 1 and "FAIL" in text


def test_cli_verify_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run("verify", "--suite", "identities", "--m", "2", "--trials", "2", "--report", str(a))
    run("verify", "--suite", "identities", "--m", "2", "--trials", "2", "--report", str(b))
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    da.pop("created"), db.pop("created")
    assert da == db


def test_cli_verify_bad_args(tmp_path):
    assert run("verify", "--suite", "nope")[0] == 2
    assert run("verify", "--suite", "models", "--m", "1")[0] == 2
    assert run("verify", "--suite", "models", "--trials", "0")[0] == 2


def test_write_tensor(tmp_path):
    p = tmp_path / "t.json"
    write_tensor(p, zoo()["S2xR"])
    assert read_tensor(p).n == 3

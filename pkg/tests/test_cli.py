import json

import pytest

from aqgrec.cli import run


def _gen(tmp_path, *argv):
    path = tmp_path / "bundle.json"
    assert run(["gen", *argv, "-o", str(path)]) == 0
    return path


def test_gen_then_check_pipeline(tmp_path, capsys):
    path = _gen(tmp_path, "s3")
    assert run(["check", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["pass"] is True
    names = [c["check"] for c in doc["checks"]]
    assert "modular-data" in names


def test_validate_and_reconstruct(tmp_path, capsys):
    path = _gen(tmp_path, "pointed", "--n", "3", "--t", "1")
    assert run(["validate", str(path)]) == 0
    capsys.readouterr()
    assert run(["reconstruct", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["labels"] == ["0", "1", "2"]


def test_dims_output(tmp_path, capsys):
    path = _gen(tmp_path, "suq2", "--q", "0.5", "--L", "3")
    assert run(["dims", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    dims = {r["label"]: r["quantum_dim"] for r in doc["labels"]}
    assert abs(dims["1"] - 2.5) < 1e-9
    assert abs(dims["3"] - 10.625) < 1e-9


def test_dual_and_group_commands(tmp_path, capsys):
    path = _gen(tmp_path, "q8")
    assert run(["dual", str(path)]) == 0
    capsys.readouterr()
    assert run(["group", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["group"]["order"] == 8
    assert doc["cocommutative"] is True


def test_rmatrix_command(tmp_path, capsys):
    path = _gen(tmp_path, "pointed", "--n", "2", "--t", "1")
    assert run(["rmatrix", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["pass"] is True
    assert doc["triangular"] is True

    path3 = _gen(tmp_path, "pointed", "--n", "3", "--t", "1")
    capsys.readouterr()
    assert run(["rmatrix", str(path3)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["triangular"] is False


def test_exit_code_2_on_input_errors(tmp_path, capsys):
    missing = tmp_path / "missing.json"
    assert run(["check", str(missing)]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["validate", str(bad)]) == 2
    # window bundles have no finite dual
    path = _gen(tmp_path, "suq2", "--L", "2")
    assert run(["dual", str(path)]) == 2
    assert run(["group", str(path)]) == 2


def test_exit_code_1_on_corrupted_bundle(tmp_path, capsys):
    path = _gen(tmp_path, "zn", "--n", "3")
    doc = json.loads(path.read_text())
    doc["fusion"][0]["isometries"][0]["data"][0][0] += 1e-3
    path.write_text(json.dumps(doc))
    assert run(["validate", str(path)]) == 1
    assert run(["check", str(path)]) == 1


def test_text_mode(tmp_path, capsys):
    path = _gen(tmp_path, "zn", "--n", "2")
    assert run(["check", str(path), "--text"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out.lower()
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)


def test_reports_are_deterministic(tmp_path):
    path = _gen(tmp_path, "d4")
    o1, o2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert run(["check", str(path), "-o", str(o1)]) == 0
    assert run(["check", str(path), "-o", str(o2)]) == 0
    assert o1.read_bytes() == o2.read_bytes()
    # regenerating the bundle is also byte-identical
    path2 = _gen(tmp_path, "d4")
    assert path.read_bytes() == path2.read_bytes()


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["--version"])
    assert exc.value.code == 0
    assert "aqgrec" in capsys.readouterr().out

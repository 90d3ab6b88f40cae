import json

import pytest

from cyclic_mubs.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_field3(capsys):
    code, out, _ = run(capsys, "generate", "--fixture", "field3")
    assert code == 0
    obj = json.loads(out)
    assert obj["structure"]["counts"] == [3, 0, 6]
    assert obj["set_type"] == "field"
    assert len(obj["classes"]) == 9


def test_generate_offset3(capsys):
    code, out, _ = run(capsys, "generate", "--fixture", "offset3")
    assert code == 0 and json.loads(out)["structure"]["counts"] == [0, 9, 0]


def test_generate_n2_search(capsys):
    code, out, _ = run(capsys, "generate", "--n", "2", "--kind", "field", "--search")
    assert code == 0
    assert len(json.loads(out)["classes"]) == 5


def test_generate_table(capsys):
    code, out, _ = run(capsys, "generate", "--fixture", "group3", "--format", "table")
    assert code == 0 and "structure (2,3,4)" in out


def test_verify_group3(capsys):
    code, out, _ = run(capsys, "verify", "--fixture", "group3")
    obj = json.loads(out)
    assert code == 0 and obj["passed"]
    assert all(r["worst_deviation"] < 1e-9 for r in obj["numeric"])


def test_verify_tampered_set(capsys, tmp_path):
    run(capsys, "generate", "--fixture", "group3", "--output", str(tmp_path / "set.json"))
    obj = json.loads((tmp_path / "set.json").read_text())
    label = obj["classes"][3]["elements"][0]
    obj["classes"][3]["elements"][0] = ("X" if label[0] != "X" else "Z") + label[1:]
    (tmp_path / "bad.json").write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify", "--input", str(tmp_path / "bad.json"))
    report = json.loads(out)
    assert code == 1 and not report["passed"]
    assert any(c["detail"] for c in report["algebraic"]["checks"] if not c["passed"])


def test_verify_stored_set_passes(capsys, tmp_path):
    path = tmp_path / "set.json"
    run(capsys, "generate", "--fixture", "offset3", "--output", str(path))
    code, out, _ = run(capsys, "verify", "--input", str(path))
    assert code == 0


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--fixture", "field3")
    obj = json.loads(out)
    assert code == 0 and obj["structure"]["counts"] == [3, 0, 6] and obj["schmidt_agrees"]
    code, out, _ = run(capsys, "classify", "--fixture", "group3")
    assert json.loads(out)["structure"]["counts"] == [2, 3, 4]


def test_classify_repaired_semigroup(capsys):
    code, out, _ = run(capsys, "classify", "--fixture", "semigroup3_symmetric")
    obj = json.loads(out)
    assert code == 0 and obj["structure"]["counts"] == [1, 6, 2] and obj["schmidt_agrees"]


def test_reference_semigroup_is_reported_invalid(capsys):
    code, _, err = run(capsys, "verify", "--fixture", "semigroup3")
    assert code == 1 and "A symmetric" in err


def test_synth_field3_qasm(capsys):
    code, out, _ = run(capsys, "synth", "--fixture", "field3", "--format", "qasm")
    gates = [line for line in out.splitlines() if line[:2] in ("h ", "s ", "cz", "cx")]
    assert code == 0 and len(gates) == 7


def test_synth_offset3_check(capsys):
    code, out, err = run(capsys, "synth", "--fixture", "offset3", "--check", "--format", "json")
    assert code == 0 and json.loads(err)["passed"]
    assert json.loads(out)["gate_count"] > 0


def test_synth_bad_matrix(capsys, tmp_path):
    path = tmp_path / "bad_C.json"
    path.write_text(json.dumps([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]))
    code, _, err = run(capsys, "synth", "--input", str(path))
    assert code == 1 and "C^T J C" in err


def test_search_json(capsys):
    code, out, _ = run(capsys, "search", "--n", "4", "--kind", "semigroup", "--limit", "3", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["found"] == 3


def test_export_roundtrip(capsys, tmp_path):
    path = tmp_path / "g.json"
    assert main(["export", "--fixture", "group3", "--output", str(path)]) == 0
    code, out, _ = run(capsys, "classify", "--input", str(path))
    assert code == 0 and json.loads(out)["structure"]["counts"] == [2, 3, 4]


def test_output_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["generate", "--fixture", "semigroup3_symmetric", "--output", str(a)])
    main(["generate", "--fixture", "semigroup3_symmetric", "--output", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "verify", "--input", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "search", "--n", "3")[0] == 2
    (tmp_path / "junk.json").write_text("{not json")
    assert run(capsys, "verify", "--input", str(tmp_path / "junk.json"))[0] == 2
    assert run(capsys, "generate", "--fixture", "field3", "--output", str(tmp_path / "no" / "x.json"))[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2

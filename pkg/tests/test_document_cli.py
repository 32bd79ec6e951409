import json
import subprocess
import sys

import pytest

from wedgemaps import cli
from wedgemaps.document import (
    DocumentError,
    StructureError,
    build,
    fixture_path,
    from_toral_spec,
    loads,
    parse,
)
from wedgemaps.invariants import CrossCheckError
from wedgemaps.kernel import Matrix
from wedgemaps.torus import ToralWedgeSpec


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, doc, name="map.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def torus_doc(coords, dims=(2, 2), **extra):
    return {"format": "wedgemaps-map/1", "spaces": [{"kind": "torus", "dim": n} for n in dims],
            "coordinates": coords, **extra}


# ---------------------------------------------------------------- documents


@pytest.mark.parametrize("name", ["ex1", "ex2", "ex3", "ex4", "ex5"])
def test_fixtures_round_trip(name):
    doc = loads(fixture_path(name).read_text())
    again = loads(doc.dumps())
    assert again.to_json() == doc.to_json()
    assert again.digest() == doc.digest()
    a, b = build(doc), build(again)
    if a.wedge is not None:
        assert a.wedge.assembled == b.wedge.assembled


def test_entries_may_be_decimal_strings():
    big = str(10 ** 40)
    doc = parse(torus_doc([{"from": 1, "to": 1, "h1": [[big]]}], dims=(1,)))
    assert doc.coordinates[0]["h1"] == Matrix([[10 ** 40]])


@pytest.mark.parametrize("bad", [
    {"format": "other"},
    torus_doc([{"from": 1, "to": 2, "h1": [[1, 0], [0, 1], [1, 1]]}]),
    torus_doc([{"from": 1, "to": 3, "h1": [[1, 0], [0, 1]]}]),
    torus_doc([{"from": 1, "to": 2, "h1": [[1, 0], [0, 1]]}, {"from": 1, "to": 2, "h1": [[1, 0], [0, 1]]}]),
    torus_doc([{"from": 1, "to": 2, "h1": [[1.5, 0], [0, 1]]}]),
    torus_doc([{"from": 1, "to": 2, "graded": {"1": [[1, 0], [0, 1]]}}]),
    torus_doc([], permutation=[1, 1]),
    {"format": "wedgemaps-map/1", "spaces": [{"kind": "generic", "betti": [2, 1]}]},
    {"format": "wedgemaps-map/1", "spaces": [{"kind": "torus", "dim": 2}], "assembled": {"2": [[1]]}},
])
def test_structural_errors(bad):
    with pytest.raises(StructureError):
        parse(bad)


def test_parse_errors():
    with pytest.raises(DocumentError):
        loads("{not json")


def test_declared_permutation_is_checked():
    doc = parse(torus_doc([{"from": 1, "to": 2, "h1": [[0, 1], [1, 0]]}], permutation=[1, 2]))
    with pytest.raises(StructureError):
        build(doc)
    doc = parse(torus_doc([{"from": 1, "to": 2, "h1": [[0, 1], [1, 0]]}], permutation=[2, 1]))
    assert build(doc).wedge is not None


def test_generic_summands_document():
    doc = parse({"format": "wedgemaps-map/1",
                 "spaces": [{"kind": "generic", "betti": [1, 1, 1]}, {"kind": "torus", "dim": 1}],
                 "coordinates": [{"from": 1, "to": 1, "graded": {"1": [[2]], "2": [[3]]}},
                                 {"from": 2, "to": 2, "h1": [[-1]]}]})
    W = build(doc).wedge
    assert W.matrix(1) == Matrix([[2, 0], [0, -1]])
    assert W.matrix(2) == Matrix([[3]])


def test_from_toral_spec():
    spec = ToralWedgeSpec((1, 1), {(0, 1): Matrix([[2]])})
    doc = from_toral_spec(spec, name="shift")
    assert doc.h1_spec() == spec


# ---------------------------------------------------------------- validate


def test_validate_example_one(capsys):
    code, out, err = run(capsys, "validate", "@ex1")
    assert code == 0
    assert "permutative, cyclic, squared by blocks" in out
    assert "obstruction: pass" in out
    assert "reference example 1" in err


def test_validate_example_four_reports_witness(capsys):
    code, out, _ = run(capsys, "validate", "@ex4")
    assert code == 3
    assert "obstruction: fail" in out and "witness: pullbacks of" in out


def test_validate_bad_block_shape(tmp_path, capsys):
    path = write(tmp_path, torus_doc([{"from": 1, "to": 1, "h1": [[1, 0], [0, 1], [0, 0]]}]))
    code, out, err = run(capsys, "validate", path)
    assert code == 2 and out == "" and "expected 2x2" in err


def test_validate_io_and_parse_errors(tmp_path, capsys):
    assert run(capsys, "validate", str(tmp_path / "missing.json"))[0] == 1
    assert run(capsys, "validate", write(tmp_path, "[1, 2"))[0] == 1
    assert run(capsys, "validate", "@nope")[0] == 1


def test_bad_flags_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["invariants", "@ex1", "--lefschetz", "many"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 1


def test_validate_json(capsys):
    code, out, _ = run(capsys, "validate", "@ex5", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["obstruction"]["passed"]
    assert payload["obstruction"]["induced"]["2"] == [["1", "-1"], ["0", "0"]]
    assert any("l(f^4) = -4" in w for w in payload["warnings"])


# ---------------------------------------------------------------- invariants


def test_invariants_example_one_json(capsys):
    code, out, err = run(capsys, "invariants", "@ex1", "--all", "12", "--json")
    assert code == 0
    r = json.loads(out)
    assert [int(x) for x in r["lefschetz"]] == [1, 7, 1, -1] * 3
    assert [int(x) for x in r["dold"]] == [1, 6, 0, -8] + [0] * 8
    assert r["zeta"]["numerator"] == ["1", "0", "2", "0", "1"]
    assert r["zeta"]["denominator"] == ["1", "-1", "-1", "1"]
    assert [int(x) for x in r["aper"]["members"]] == [1, 2, 4]
    assert "zeta-reduction" in r["cross_checks"]
    assert r["structure"]["permutation"] == ["2", "1"]


def test_invariants_example_five_text(capsys):
    code, out, _ = run(capsys, "invariants", "@ex5", "--all", "8")
    assert code == 0
    assert "zeta: (1 + t^2) / (1 - 2*t + t^2)" in out
    assert "APer up to 8: {1, 2, 4}" in out


def test_invariants_constant_map(tmp_path, capsys):
    path = write(tmp_path, torus_doc([]))
    code, out, _ = run(capsys, "invariants", path, "--all", "4", "--json")
    r = json.loads(out)
    assert r["lefschetz"] == ["1", "1", "1", "1"] and r["dold"] == ["1", "0", "0", "0"]
    assert r["zeta"]["numerator"] == ["1"] and r["zeta"]["denominator"] == ["1", "-1"]


def test_invariants_selected_tables(capsys):
    code, out, _ = run(capsys, "invariants", "@ex1", "--lefschetz", "5", "--json")
    r = json.loads(out)
    assert len(r["lefschetz"]) == 5 and "zeta" not in r and "dold" not in r


def test_invariants_refuses_obstructed_map(capsys):
    code, out, err = run(capsys, "invariants", "@ex3")
    assert code == 3 and out == "" and "witness" in err


def test_json_integers_survive_round_trip(capsys):
    code, out, _ = run(capsys, "invariants", "@ex2", "--lefschetz", "64", "--json")
    values = [int(x) for x in json.loads(out)["lefschetz"]]
    assert values[63] == 1 - 4 * 2 ** 32 + 2 * 2 ** 64
    assert all(isinstance(x, str) for x in json.loads(out)["lefschetz"])


def test_cross_check_failure_is_exit_four(capsys, monkeypatch):
    def boom(W, m_max=24):
        raise CrossCheckError("forced")
    monkeypatch.setattr(cli, "cross_check", boom)
    code, out, err = run(capsys, "invariants", "@ex1")
    assert code == 4 and "forced" in err and out == ""


# ---------------------------------------------------------------- scan


def test_scan_prime_single(capsys):
    code, out, _ = run(capsys, "scan-gc", "--n", "3", "--c", "3", "--s", "1", "--max", "30", "--json")
    r = json.loads(out)
    assert code == 0 and r["signs"]["negative"] == "30" and r["warnings"] == []


def test_scan_two_cycle_text(capsys):
    code, out, _ = run(capsys, "scan-gc", "--n", "3", "--c", "3", "--s", "2", "--max", "12")
    assert code == 0 and "6 negative, 5 zero, 1 positive" in out


def test_scan_composite_reports_only(capsys):
    code, out, err = run(capsys, "scan-gc", "--n", "4", "--c", "3", "--max", "20")
    assert code == 0 and "not an odd prime" in err and "all negative: no" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wedgemaps", "validate", "@ex1", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["structure"]["is_cyclic"] is True

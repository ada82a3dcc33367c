import json

import pytest

from tcover.cli import main
from tcover.hypercore import loads


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def docs(tmp_path, capsys):
    paths = {}
    for name in ("pentagon", "four-square"):
        code, out, _ = run(capsys, "construct", name)
        assert code == 0
        paths[name] = tmp_path / f"{name}.json"
        paths[name].write_text(out)
    code, out, _ = run(capsys, "construct", "affine", "--q", "3")
    paths["affine"] = tmp_path / "affine.json"
    paths["affine"].write_text(out)
    single = tmp_path / "single.json"
    single.write_text(json.dumps({"vertices": ["x/0", "x/1"], "edges": [["x/0", "x/1"]]}))
    paths["single"] = single
    return paths


def test_construct_pentagon(capsys):
    code, out, _ = run(capsys, "construct", "pentagon")
    assert code == 0
    assert len(json.loads(out)["edges"]) == 10


def test_construct_witness(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "construct", "witness", "--a", "3", "--b", "2", "--report", str(report))
    assert code == 0
    rep = json.loads(report.read_text())
    assert rep["claimed_tau"] == 5 and rep["status"] == "verified"
    assert rep["certificate"]["value"] == 5
    assert loads(out).profile == (3, 2)


def test_construct_grid_degenerate(capsys):
    code, _, err = run(capsys, "construct", "grid", "--a", "1")
    assert code == 2 and "refused" in err


def test_construct_unknown(capsys):
    code, _, err = run(capsys, "construct", "tesseract")
    assert code == 2 and "unknown construction" in err


def test_construct_missing_param(capsys):
    code, _, err = run(capsys, "construct", "base")
    assert code == 2 and "--b" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("construct", "base", "--b", "3"),
        ("construct", "plane", "--q", "3"),
        ("construct", "truncated-plane"),
        ("construct", "compose", "--family", "grid", "--a", "3", "--b", "2"),
        ("construct", "compose", "--family", "affine", "--q", "4", "--b", "2"),
        ("construct", "grid", "--a", "3"),
    ],
)
def test_construct_variants(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    json.loads(out)


def test_construct_merge(capsys, docs):
    code, out, _ = run(capsys, "construct", "merge", "--input", str(docs["four-square"]), "--sides", "0,1")
    assert code == 0
    assert json.loads(out)["profile"] == [4, 2, 2]


def test_solve_tau_pentagon(capsys, docs):
    code, out, _ = run(capsys, "solve", str(docs["pentagon"]), "--tau")
    cert = json.loads(out)
    assert code == 0 and cert["value"] == 4 and cert["status"] == "optimal"


def test_solve_nu_four_square(capsys, docs):
    code, out, _ = run(capsys, "solve", str(docs["four-square"]), "--nu")
    assert code == 0 and json.loads(out)["value"] == 1


def test_solve_single_edge(capsys, docs):
    code, out, _ = run(capsys, "solve", str(docs["single"]), "--tau")
    assert code == 0 and json.loads(out)["value"] == 1


def test_solve_budget_exit_code(capsys, docs):
    code, out, _ = run(capsys, "solve", str(docs["four-square"]), "--tau", "--max-nodes", "3")
    assert code == 3 and json.loads(out)["status"] == "unresolved"


def test_solve_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": ["a"], "edges": [["b"]]}')
    code, _, err = run(capsys, "solve", str(bad), "--tau")
    assert code == 2 and "edges[0][0]" in err


def test_solve_is_byte_stable(capsys, docs):
    first = run(capsys, "solve", str(docs["four-square"]), "--tau")[1]
    assert run(capsys, "solve", str(docs["four-square"]), "--tau")[1] == first


def test_verify_intersecting_four_square(capsys, docs):
    code, out, _ = run(capsys, "verify", str(docs["four-square"]), "--intersecting")
    assert code == 0 and "pass" in out


def test_verify_partition_pentagon(capsys, docs):
    code, out, _ = run(capsys, "verify", str(docs["pentagon"]), "--partition", "--profile", "2,2")
    assert code == 0
    code, out, _ = run(capsys, "verify", str(docs["pentagon"]), "--profile", "3,1")
    assert code == 1


def test_verify_bad_cover(capsys, docs):
    code, out, _ = run(capsys, "verify", str(docs["pentagon"]), "--cover", "u/0,u/1,w/0")
    assert code == 1 and "fail" in out


def test_verify_good_cover(capsys, docs):
    code, _, _ = run(capsys, "verify", str(docs["pentagon"]), "--cover", "u/0,u/1,u/2,u/3")
    assert code == 0


def test_verify_family_claims(capsys, docs):
    code, out, _ = run(capsys, "verify", str(docs["affine"]), "--evasive", "--cross-intersecting")
    assert code == 0 and out.count("pass") == 2


def test_verify_claims_file(capsys, docs, tmp_path):
    claims = tmp_path / "claims.json"
    claims.write_text(json.dumps({"intersecting": True, "partition": [2, 2, 2, 2]}))
    code, _, _ = run(capsys, "verify", str(docs["four-square"]), "--claims", str(claims))
    assert code == 0


def test_verify_malformed_claims(capsys, docs, tmp_path):
    claims = tmp_path / "claims.json"
    claims.write_text(json.dumps({"beautiful": True}))
    code, _, err = run(capsys, "verify", str(docs["pentagon"]), "--claims", str(claims))
    assert code == 2 and "unknown claim" in err
    code, _, _ = run(capsys, "verify", str(docs["pentagon"]))
    assert code == 2


def test_verify_evasive_needs_family(capsys, docs):
    code, _, _ = run(capsys, "verify", str(docs["pentagon"]), "--evasive")
    assert code == 2


def test_usage_error_exit_code(capsys):
    code, _, _ = run(capsys, "solve")
    assert code == 2

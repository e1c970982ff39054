import json
import subprocess
import sys

import pytest

from bottcube import acceptance, cli
from bottcube.census import classify, run_census, summarize
from bottcube.quasitoric import CharMatrixCube


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_non_bott(capsys):
    code, out, _ = run(capsys, "classify", "--input", '{"n":2,"lambda_star":[[-1,-2],[-1,-1]]}')
    rec = json.loads(out)
    assert code == 0
    assert rec["valid"] and rec["bott"] is False
    assert rec["bott_up_to_omniorientation"] is False
    assert rec["signs"] == [1, 1, 1, -1]
    assert rec["ring_iso_to_product"] is False
    assert "seconds" not in rec


def test_classify_bott_from_file(tmp_path, capsys):
    p = tmp_path / "a.json"
    p.write_text(json.dumps({"n": 2, "a": [[-1, -2], [0, -1]]}))
    code, out, _ = run(capsys, "classify", "--input", str(p), "--timing")
    rec = json.loads(out)
    assert code == 0 and rec["bott"] and rec["bott_matrix"] == [[-1, -2], [0, -1]]
    assert rec["ring_iso_to_product"] and rec["strict_factorization"]
    assert rec["seconds"] >= 0


def test_semifree_command(capsys):
    code, out, _ = run(capsys, "semifree", "--input", '{"n":3,"a":[[-1,-2,-2],[0,-1,0],[0,0,-1]]}')
    rep = json.loads(out)
    assert code == 0
    assert rep["strict_factorization"] is True
    assert rep["strict_steps"] == [None, [0, 1], [0, 1]]
    assert rep["semifree_vectors"]
    code, out, _ = run(capsys, "semifree", "--input", '{"n":3,"a":[[-1,0,-2],[0,-1,-2],[0,0,-1]]}')
    rep = json.loads(out)
    assert rep["strict_factorization"] is False and rep["semifree_vectors"] == []


def test_cohomology_command(capsys):
    code, out, _ = run(capsys, "cohomology", "--input", '{"n":2,"a":[[-1,3],[0,-1]]}')
    rep = json.loads(out)
    assert code == 0
    assert rep["iso_to_product"] is False
    assert rep["graded_ranks"] == rep["expected_ranks"] == [1, 2, 1]
    assert rep["bq_mod2"] is True
    code, out, _ = run(capsys, "cohomology", "--input", '{"n":2,"a":[[-1,-4],[0,-1]]}', "--search-bound", "3")
    rep = json.loads(out)
    assert rep["iso_to_product"] is True and rep["square_zero_search"]["basis"] is not None
    code, out, _ = run(capsys, "cohomology", "--pretty", "--input", '{"n":2,"lambda_star":[[-1,-2],[-1,-1]]}')
    assert code == 0 and "iso to product of 2-spheres: False" in out


def test_crosscomplex_command(capsys):
    code, out, _ = run(capsys, "crosscomplex", "--input",
                       '{"vertices":6,"facets":[[0,2,4],[0,2,5],[0,3,4],[0,3,5],[1,2,4],[1,2,5],[1,3,4],[1,3,5]]}')
    rep = json.loads(out)
    assert code == 0 and rep["crosscomplex"] and rep["crosscomplex_recursive"]
    code, out, _ = run(capsys, "crosscomplex", "--input", '{"facets":5,"vertex_facets":[[0,1],[1,2],[2,3],[3,4],[4,0]]}')
    rep = json.loads(out)
    assert rep == {"kind": "polytope", "dim": 2, "combinatorial_cube": False}


def test_fan2d_command(capsys):
    code, out, _ = run(capsys, "fan2d", "--input", '{"rays":[[1,0],[0,1],[-1,-2],[0,-1]]}')
    rep = json.loads(out)
    assert code == 0 and rep["complete_smooth"] and [1, 1] in rep["semifree"]
    code, out, _ = run(capsys, "fan2d", "--max-rays", "5", "--bound", "2")
    lines = out.strip().splitlines()
    summary = json.loads(lines[-1])["summary"]
    assert summary["fans"] == len(lines) - 1
    assert summary["ray_counts"] == [4]


def test_census_is_deterministic(capsys):
    _, one, _ = run(capsys, "census", "--rank", "2", "--bound", "2", "--jobs", "1")
    _, four, _ = run(capsys, "census", "--rank", "2", "--bound", "2", "--jobs", "3")
    assert one == four
    lines = one.strip().splitlines()
    summary = json.loads(lines[-1])["summary"]
    assert summary["records"] == len(lines) - 1 == summary["valid"]
    _, bott, _ = run(capsys, "census", "--kind", "bott", "--rank", "3", "--entry-min", "-2", "--entry-max", "0")
    recs = [json.loads(x) for x in bott.strip().splitlines()[:-1]]
    assert len(recs) == 27 and all(r["bott"] for r in recs)


def test_census_records_are_self_contained():
    for rec in run_census("char", 2, -1, 1):
        again = classify(CharMatrixCube(rec["lambda_star"])).to_json()
        assert again == rec


def test_summarize_counts():
    recs = [{"valid": True, "bott": True, "semifree_vectors": [[1]]}, {"valid": True, "bott": False}]
    s = summarize(recs)
    assert s["records"] == 2 and s["bott"] == 1 and s["with_semifree_vectors"] == 1


@pytest.mark.parametrize("argv", [
    ["classify", "--input", "{not json"],
    ["classify", "--input", "/nonexistent/file.json"],
    ["classify", "--input", '{"n":2,"lambda_star":[[1,2],[3]]}'],
    ["classify", "--input", '{"n":2,"a":[[-1,0],[1,-1]]}'],
    ["classify", "--input", "[1, 2]"],
    ["classify"],
    ["semifree", "--input", '{"n":2,"lambda_star":[[-1,-1],[-1,-1]]}'],
    ["census", "--entry-min", "2", "--entry-max", "1"],
    ["crosscomplex", "--input", '{"vertices":2,"facets":[[0,7]]}'],
    ["fan2d", "--input", '{"rays":[[1]]}'],
])
def test_input_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert json.loads(err)["error"] == "input"


def test_invalid_matrix_is_data_not_error(capsys):
    code, out, _ = run(capsys, "classify", "--input", '{"n":2,"lambda_star":[[-1,-1],[-1,-1]]}')
    assert code == 0 and json.loads(out)["valid"] is False


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "classify", "--input", '{"n":1,"lambda_star":[[-1]]}', "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["bott"] is True


def test_stdin_input(monkeypatch, capsys):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO('{"n":1,"lambda_star":[[1]]}'))
    code, out, _ = run(capsys, "classify", "--input", "-")
    assert code == 0 and json.loads(out)["bott"] is False


def test_selfcheck_exit_codes(monkeypatch, capsys):
    ok = acceptance.Result("1", "stub", True, "", 0.0, None)
    bad = acceptance.Result("2", "stub", False, "", 0.0, None)
    monkeypatch.setattr(acceptance, "run_all", lambda verbose, echo: [ok])
    assert run(capsys, "selfcheck")[0] == 0
    monkeypatch.setattr(acceptance, "run_all", lambda verbose, echo: [ok, bad])
    code, out, _ = run(capsys, "selfcheck")
    assert code == 1 and "failed: 2" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bottcube", "classify", "--input", '{"n":1,"lambda_star":[[-1]]}'],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["bott"] is True


def test_internal_assertion_exits_2(monkeypatch, capsys):
    def broken(c, timing=False):
        raise AssertionError("witness failed to replay")
    monkeypatch.setattr(cli, "classify", broken)
    code, _, err = run(capsys, "classify", "--input", '{"n":1,"lambda_star":[[-1]]}')
    assert code == 2 and json.loads(err)["error"] == "internal"

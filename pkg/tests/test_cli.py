"""End-to-end tests of the command line front end: exit codes, report
envelopes, content hashes, determinism, and the error path for inputs that
fail their validators."""

import json
import subprocess
import sys

import pytest

from centrum.algebra import alg_group_c2
from centrum.cli import algebra_dict, content_hash, main


def run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "centrum", *argv],
        capture_output=True,
        text=True,
    )
    payload = json.loads(proc.stdout) if proc.stdout.strip() else None
    return proc.returncode, payload


def test_center_of_matrix_algebra():
    code, r = run_cli("center", "--algebra", "matrix:2")
    assert code == 0
    assert r["schema"] == "centrum/1"
    assert r["command"] == "center"
    assert r["result"]["dim"] == 1
    assert r["ok"] is True
    assert all(c["ok"] for c in r["checks"])
    assert r["inputs"]["algebra"]["hash"].startswith("sha256:")


def test_centralizer_of_diagonal_inclusion():
    code, r = run_cli("centralizer", "--map", "diag:2")
    assert code == 0
    assert r["result"]["dim"] == 2
    grid = [[int(x) for x in row] for row in r["result"]["basis"]]
    # the two columns span the diagonal matrices
    assert grid == [[1, 0], [0, 0], [0, 0], [0, 1]]


def test_morita_example_passes():
    code, r = run_cli("verify", "morita", "--algebra", "matrix:1", "--n", "2")
    assert code == 0
    assert r["result"]["z_dim"] == r["result"]["z_amplified_dim"] == 1


def test_validator_failure_exits_two_with_violations(tmp_path):
    bad = {
        "kind": "algebra",
        "dim": 3,
        "unit": ["1", "0", "0"],
        "sc": [
            [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
            [["0", "1", "0"], ["0", "0", "1"], ["1", "0", "0"]],
            [["0", "0", "1"], ["0", "0", "0"], ["0", "0", "0"]],
        ],
    }
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(bad))
    code, r = run_cli("validate", "algebra", f"@{path}")
    assert code == 2
    assert r["ok"] is False
    assert any("associativity fails at" in v
               for v in r["error"]["violations"])


def test_malformed_json_exits_two(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    code, r = run_cli("validate", "algebra", f"@{path}")
    assert code == 2
    assert "malformed JSON" in r["error"]["message"]


def test_unknown_constructor_exits_two():
    code, r = run_cli("center", "--algebra", "quaternions")
    assert code == 2
    assert "unknown algebra constructor" in r["error"]["message"]


def test_non_invertible_centralizer_cospan_exits_one():
    code, r = run_cli("invertible", "cospan", "--map", "diag:2")
    assert code == 1
    assert r["result"]["invertible"] is False
    assert r["result"]["reasons"]
    assert r["ok"] is False


def test_invertible_identity_cospan_exits_zero():
    code, r = run_cli("invertible", "cospan", "--cospan",
                      "identity:product:k^2")
    assert code == 0
    assert r["result"]["invertible"] is True
    assert "inverse" in r["result"]


def test_reports_byte_identical_across_runs():
    proc1 = subprocess.run(
        [sys.executable, "-m", "centrum", "beta-check", "--seed", "11"],
        capture_output=True, text=True)
    proc2 = subprocess.run(
        [sys.executable, "-m", "centrum", "beta-check", "--seed", "11"],
        capture_output=True, text=True)
    assert proc1.returncode == proc2.returncode == 0
    assert proc1.stdout == proc2.stdout
    assert proc1.stdout.strip()


def test_constructor_and_file_presentations_hash_identically(tmp_path):
    path = tmp_path / "c2.json"
    path.write_text(json.dumps(algebra_dict(alg_group_c2())))
    _, from_file = run_cli("center", "--algebra", f"@{path}")
    _, from_name = run_cli("center", "--algebra", "group:C2")
    assert (from_file["inputs"]["algebra"]["hash"]
            == from_name["inputs"]["algebra"]["hash"])
    assert from_file["result"] == from_name["result"]


def test_out_flag_writes_byte_identical_copy(tmp_path):
    path = tmp_path / "copy.json"
    proc = subprocess.run(
        [sys.executable, "-m", "centrum", "center", "--algebra", "k",
         "--out", str(path)],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert path.read_text() == proc.stdout


def test_tensor_over_column_and_row_modules():
    code, r = run_cli("tensor-over", "--left", "col:2", "--right", "row:2")
    assert code == 0
    assert r["result"]["dim"] == 4
    assert r["result"]["ambient_dim"] == 4
    assert r["result"]["relation_rank"] == 0


def test_tensor_over_middle_mismatch_exits_two():
    code, r = run_cli("tensor-over", "--left", "col:2", "--right", "col:2")
    assert code == 2
    assert "right algebra" in r["error"]["message"]


def test_prime_field_center():
    code, r = run_cli("center", "--algebra", "matrix:2", "--field", "gfp:5")
    assert code == 0
    assert r["field"] == "gfp:5"
    assert r["result"]["dim"] == 1


def test_compose_2diagrams_both_directions():
    for how in ("vertical", "horizontal"):
        code, r = run_cli("compose-2diagrams", how,
                          "--first", "identity:identity:k",
                          "--second", "identity:identity:k")
        assert code == 0, how
        assert r["command"] == f"compose-2diagrams {how}"


def test_generated_beta_grid_reports_all_four_inputs():
    code, r = run_cli("beta-check", "--seed", "4")
    assert code == 0
    assert set(r["inputs"]) == {"d1p", "d1", "d2p", "d2"}
    assert all(v["source"] == "generated:seed=4"
               for v in r["inputs"].values())
    assert len(r["checks"]) == 4


def test_z_hom_of_diagonal_inclusion():
    code, r = run_cli("z-hom", "--map", "diag:2")
    assert code == 0
    assert r["result"]["object"]["apex_dim"] == 2
    assert r["result"]["cospan"]["z_src_dim"] == 2
    assert r["result"]["cospan"]["z_tgt_dim"] == 1


def test_main_callable_in_process(capsys):
    code = main(["center", "--algebra", "dual_numbers"])
    out = capsys.readouterr().out
    assert code == 0
    assert json.loads(out)["result"]["dim"] == 2


def test_verify_lax_seeded_deterministic():
    code1, r1 = run_cli("verify", "lax", "--seed", "2")
    code2, r2 = run_cli("verify", "lax", "--seed", "2")
    assert code1 == code2 == 0
    assert r1 == r2
    assert r1["result"]["chains"] == 3


def test_content_hash_is_stable():
    d = algebra_dict(alg_group_c2())
    assert content_hash(d) == content_hash(json.loads(json.dumps(d)))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))

import json

import pytest

from quandlehom.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_homology_text(capsys):
    code, out, _ = run(capsys, "homology", "--quandle", "takasaki:3,3", "--degree", "2")
    assert code == 0 and out.strip() == "Z_3"


def test_homology_of_core_g4(capsys):
    code, out, _ = run(capsys, "homology", "--quandle", "core:g4_27", "--degree", "2")
    assert code == 0 and out.strip() == "Z_3"


def test_homology_json_is_stable(capsys):
    code, out, _ = run(
        capsys, "homology", "--quandle", "dihedral:4", "--degree", "2", "--json"
    )
    assert code == 0
    assert out.strip() == json.dumps(json.loads(out), sort_keys=True)
    assert json.loads(out)["torsion"] == [2, 2]


def test_homology_rack_theory(capsys):
    code, out, _ = run(
        capsys, "homology", "--quandle", "dihedral:3", "--degree", "1",
        "--theory", "rack", "--json",
    )
    assert code == 0
    assert json.loads(out)["free_rank"] == 1


def test_verify_theorem_pass(capsys):
    for spec in ("3,9", "27", "5,5"):
        code, out, _ = run(capsys, "verify-theorem", "--group", spec)
        assert code == 0 and "PASS" in out


def test_verify_theorem_refuses_even(capsys):
    code, _, err = run(capsys, "verify-theorem", "--group", "3,4")
    assert code == 2 and "odd" in err


def test_extension_report(capsys):
    code, out, _ = run(capsys, "extension", "--p", "3", "--check-h2")
    assert code == 0
    assert "kei: True" in out and "quasigroup: False" in out and "H2: 0" in out


def test_extension_table_size(capsys):
    code, out, _ = run(capsys, "extension", "--p", "5", "--emit-table")
    assert code == 0
    lines = [l for l in out.splitlines() if l and not l.startswith("size")]
    assert len(lines) == 125


def test_extension_rejects_non_prime(capsys):
    code, _, err = run(capsys, "extension", "--p", "4")
    assert code == 2


def test_invariant_from_file(tmp_path, capsys):
    f = tmp_path / "unknot.gauss"
    f.write_text("")
    code, out, _ = run(capsys, "invariant", "--diagram", str(f), "--quandle", "takasaki:3,3")
    assert code == 0
    assert "colorings: 9" in out and "0: 9" in out


def test_invariant_with_generator_cocycle(tmp_path, capsys):
    from quandlehom.links import GENERATOR_DIAGRAM_CODE

    f = tmp_path / "gen.gauss"
    f.write_text(GENERATOR_DIAGRAM_CODE)
    code, out, _ = run(
        capsys, "invariant", "--diagram", str(f), "--quandle", "takasaki:3,3",
        "--cocycle", "generator:3,halved", "--json",
    )
    assert code == 0
    counts = json.loads(out)["counts"]
    assert any(k != "0" and v for k, v in counts.items())


def test_invariant_parse_error_exit(tmp_path, capsys):
    f = tmp_path / "bad.gauss"
    f.write_text("O1+ X2-")
    code, _, err = run(capsys, "invariant", "--diagram", str(f), "--quandle", "dihedral:3")
    assert code == 2


def test_axioms_ok(capsys):
    code, out, _ = run(capsys, "axioms", "--quandle", "core:heisenberg3")
    assert code == 0 and "kei: True" in out


def test_axioms_failure_exit(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"table": [[1, 0], [1, 1]]}))
    code, out, _ = run(capsys, "axioms", "--file", str(f))
    assert code == 1 and "idempotency" in out


def test_unknown_spec_exit_and_suggestion(capsys):
    code, _, err = run(capsys, "homology", "--quandle", "takasak:3,3", "--degree", "2")
    assert code == 2 and "did you mean" in err


def test_resource_limit_exit(capsys):
    code, _, err = run(
        capsys, "homology", "--quandle", "takasaki:3,3", "--degree", "2",
        "--max-columns", "10",
    )
    assert code == 3 and "resource" in err.lower()


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["homology", "--degree", "2"])
    assert exc.value.code == 2


def test_reproduce_paper_quick(capsys):
    code, out, _ = run(capsys, "reproduce-paper", "--skip-slow")
    assert code == 0
    assert "FAIL" not in out
    assert "0 failure(s)" in out

import json

from app import cli
from app.cli import main
from app.errors import NotInEPart


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_semigroup_info(capsys):
    code, out, _ = _run(capsys, "semigroup", "info", "--gens", "6,9,19")
    assert code == 0
    info = json.loads(out)
    assert info["char_exponents"] == [6, 9, 10]
    assert info["gcd_chain"] == [6, 3, 1]
    assert info["quotients"] == [2, 3]
    assert info["milnor"] == 42
    assert len(info["gaps"]) == 21


def test_semigroup_list(capsys):
    code, out, _ = _run(capsys, "semigroup", "list", "--beta0-max", "4", "--beta-max", "7")
    assert code == 0
    generators = [record["generators"] for record in json.loads(out)]
    assert [2, 3] in generators
    assert [4, 6, 13] in generators


def test_branch_invariants_and_verify(capsys, tmp_path):
    path = tmp_path / "b.json"
    code, _, _ = _run(
        capsys, "branch", "make", "--char", "6,9,10", "--coeffs", "9:1,10:1", "--out", str(path)
    )
    assert code == 0
    record = json.loads(path.read_text())
    assert record["n"] == 6
    assert record["phi"] == [[9, 1, 1], [10, 1, 1]]

    code, out, _ = _run(capsys, "invariants", "--branch", str(path))
    assert code == 0
    invariants = json.loads(out)
    assert invariants["mu"] == 42
    assert invariants["lambda_minus_gamma"] == [16, 22, 26, 29, 32, 35, 41]
    assert invariants["tau"] == invariants["tau_oracle"] == 35
    assert invariants["semiroots"][1]["text"] == "y^2 - x^3"

    code, out, _ = _run(capsys, "verify", "--branch", str(path), "--all")
    assert code == 0
    assert {r["status"] for r in json.loads(out)} == {"verified"}


def test_cusp_invariants(capsys, tmp_path):
    path = tmp_path / "cusp.json"
    assert main(["branch", "make", "--char", "2,3", "--coeffs", "3:1", "--out", str(path)]) == 0
    code, out, _ = _run(capsys, "invariants", "--branch", str(path))
    assert code == 0
    invariants = json.loads(out)
    assert invariants["tau"] == invariants["mu"] == 2


def test_rational_coefficients(capsys):
    code, out, _ = _run(capsys, "branch", "make", "--char", "2,3", "--coeffs", "3:-2/4,5:3")
    assert code == 0
    assert json.loads(out)["phi"] == [[3, -1, 2], [5, 3, 1]]


def test_single_check(capsys, tmp_path):
    path = tmp_path / "b.json"
    main(["branch", "make", "--char", "4,6,7", "--coeffs", "6:1,7:1", "--out", str(path)])
    capsys.readouterr()
    code, out, _ = _run(capsys, "verify", "--branch", str(path), "--check", "ng2")
    assert code == 0
    [report] = json.loads(out)
    assert report["theorem"] == "ng2"
    assert report["witness"]["tau"] == 14


def test_sweep_table(capsys, tmp_path):
    code, out, _ = _run(
        capsys, "sweep", "--gens", "4,6,13", "--samples", "4", "--seed", "7", "--workers", "1"
    )
    assert code == 0
    assert out.splitlines() == ["lambda_minus_gamma\ttau\tcount", "{11,15}\t14\t4"]

    stem = tmp_path / "report"
    code, _, _ = _run(
        capsys, "sweep", "--gens", "2,3", "--samples", "2", "--workers", "1", "--out", str(stem)
    )
    assert code == 0
    assert (tmp_path / "report.tsv").read_text() == "lambda_minus_gamma\ttau\tcount\n{}\t2\t2\n"
    assert json.loads((tmp_path / "report.json").read_text())["status"] == "verified"


def test_sweep_store(capsys):
    code, _, err = _run(
        capsys, "sweep", "--gens", "2,3", "--samples", "2", "--workers", "1", "--store"
    )
    assert code == 0
    assert "stored sweep" in err


def test_usage_and_input_errors(capsys, tmp_path):
    assert main(["semigroup", "info"]) == 2
    assert main(["semigroup", "info", "--gens", "8,10,21"]) == 2
    assert main(["branch", "make", "--char", "6,9,10", "--coeffs", "9:1"]) == 2
    assert main(["branch", "make", "--char", "2,3", "--coeffs", "3:x"]) == 2
    assert main(["invariants", "--branch", str(tmp_path / "missing.json")]) == 2
    broken = tmp_path / "broken.json"
    broken.write_text('{"n": 2}')
    assert main(["invariants", "--branch", str(broken)]) == 2
    assert main(["verify", "--branch", str(broken), "--check", "nonsense"]) == 2


def test_failed_checks_and_bad_levels(capsys, tmp_path, monkeypatch):
    path = tmp_path / "cusp.json"
    assert main(["branch", "make", "--char", "2,3", "--coeffs", "3:1", "--out", str(path)]) == 0

    def not_in_e_part(branch):
        raise NotInEPart("the form does not have the degree pattern of E(f)")

    monkeypatch.setitem(cli.CHECKS, "tjurina", not_in_e_part)
    assert main(["verify", "--branch", str(path), "--check", "tjurina"]) == 1
    assert main(["verify", "--branch", str(path), "--check", "families", "--k", "3"]) == 2
    assert "error:" in capsys.readouterr().err

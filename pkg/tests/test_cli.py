import json

import pytest

from elliptica import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog_lists_names(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    assert "cpn_sullivan" in out and "sphere_odd" in out


def test_check_ok(capsys):
    code, out, _ = run(capsys, "check", "cpn_sullivan(2)")
    assert code == 0
    assert "status: ok" in out


def test_cohomology_json_shape(capsys):
    code, out, _ = run(capsys, "cohomology", "cpn_sullivan(2)", "--json")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"model", "bound", "tables", "ledger", "status"}
    assert payload["tables"]["betti"]["4"] == 1
    assert payload["status"] == "ok"


def test_json_output_is_deterministic(capsys):
    _, out1, _ = run(capsys, "invariants", "cpn_sullivan(2)", "--json")
    _, out2, _ = run(capsys, "invariants", "cpn_sullivan(2)", "--json")
    assert out1 == out2


def test_invariants_quillen_both_eta_readouts(capsys):
    code, out, _ = run(capsys, "invariants", "cpn_quillen(2)")
    assert code == 0
    assert "eta (alternating Gamma sum, algebra degrees) = 3" in out
    assert "eta (literal sequence readout) = -1" in out


def test_whitehead_reports_exactness(capsys):
    code, out, _ = run(capsys, "whitehead", "s2", "--max-degree", "6")
    assert code == 0
    assert "exact up to degree 6: yes" in out


def test_verify_all_identities(capsys):
    code, out, _ = run(capsys, "verify", "cpn_sullivan(2)")
    assert code == 0
    assert "FAIL" not in out


def test_compare_pair(capsys):
    code, out, _ = run(capsys, "compare", "s2", "s2_quillen")
    assert code == 0
    assert "status: ok" in out


def test_usage_error_exit_code(capsys):
    code, _, err = run(capsys, "invariants", "no_such_model")
    assert code == 2
    assert "usage error" in err


def test_missing_file_exit_code(capsys):
    code, _, err = run(capsys, "check", "/nonexistent/path/model.rhm")
    assert code == 2


def test_syntax_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.rhm"
    p.write_text("model m : sullivan\ngen x : 2\nd x = $$\n")
    code, _, err = run(capsys, "check", str(p))
    assert code == 2
    assert "line 3" in err


def test_domain_error_exit_code(tmp_path, capsys):
    # polynomial algebra on one even generator: valid but not elliptic
    p = tmp_path / "poly.rhm"
    p.write_text("model poly : sullivan\ngen x : 2\n")
    code, _, err = run(capsys, "invariants", str(p))
    assert code == 1


def test_parse_file_roundtrip_via_cli(tmp_path, capsys):
    from elliptica import dsl
    text = dsl.serialize(dsl.catalog_spec("cpn_sullivan(2)"))
    p = tmp_path / "cp2.rhm"
    p.write_text(text)
    code, out, _ = run(capsys, "invariants", str(p))
    assert code == 0
    assert "rho = 3" in out

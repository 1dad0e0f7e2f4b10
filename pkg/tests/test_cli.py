import json
import subprocess
import sys

from fiatcells.cli import run

from conftest import FIXTURES, GOLDEN


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_matches_golden(capsys):
    for what, golden in (("s2", "s2.json"), ("sl2", "sl2.json")):
        code, out, err = invoke(capsys, "gen", what)
        assert code == 0 and err == ""
        assert out == (GOLDEN / golden).read_text(encoding="utf-8")


def test_gen_is_byte_stable(capsys):
    code1, out1, _ = invoke(capsys, "gen", "hecke", "--n", "3")
    code2, out2, _ = invoke(capsys, "gen", "hecke", "--n", "3")
    assert code1 == code2 == 0 and out1 == out2


def test_lint_text_golden(capsys):
    code, out, _ = invoke(capsys, "lint", str(GOLDEN / "sl2.json"))
    assert code == 0
    assert out == (GOLDEN / "lint_sl2.txt").read_text(encoding="utf-8")


def test_analyze_text_golden(capsys):
    code, out, _ = invoke(capsys, "analyze", str(GOLDEN / "sl2.json"))
    assert code == 0
    assert out == (GOLDEN / "analyze_sl2.txt").read_text(encoding="utf-8")


def test_cells_text_golden(capsys):
    code, out, _ = invoke(capsys, "cells", "--kind", "right", str(GOLDEN / "s2.json"))
    assert code == 0
    assert out == (GOLDEN / "cells_s2_right.txt").read_text(encoding="utf-8")


def test_cells_json_envelope(capsys):
    code, out, _ = invoke(capsys, "cells", "--json", "--kind", "left", str(GOLDEN / "sl2.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["tool"] == "fiatcells"
    assert doc["kind"] == "left"
    assert len(doc["input_sha256"]) == 64
    assert doc["seed"] == 0
    assert ["1_j", "theta_on"] in doc["classes"]


def test_order_command(capsys):
    code, out, _ = invoke(capsys, "order", "--kind", "two-sided", str(GOLDEN / "sl2.json"))
    assert code == 0
    assert out.strip() == "0 < 1"


def test_annihilator_command(capsys):
    code, out, _ = invoke(capsys, "annihilator", "--morph", "1_i", str(GOLDEN / "s2.json"))
    assert code == 0
    assert "F" in out
    code, out, _ = invoke(capsys, "annihilator", "--morph", "F", str(GOLDEN / "s2.json"))
    assert code == 0
    assert "(empty)" in out


def test_exit_codes_on_fixtures(capsys):
    code, out, _ = invoke(capsys, "lint", str(FIXTURES / "nonassoc.json"))
    assert code == 2
    assert "associativity" in out and "FAIL" in out
    code, out, _ = invoke(capsys, "lint", str(FIXTURES / "badstar.json"))
    assert code == 2
    assert "star-anti-automorphism" in out
    code, out, _ = invoke(capsys, "lint", str(FIXTURES / "unequal_m.json"))
    assert code == 2
    assert "m-divisibility: FAIL" in out
    assert "left-cell-constancy: FAIL" in out


def test_validate_exit_codes(capsys):
    code, _, _ = invoke(capsys, "validate", str(GOLDEN / "sl2.json"))
    assert code == 0
    code, out, _ = invoke(capsys, "validate", str(FIXTURES / "nonassoc.json"))
    assert code == 2
    assert "associativity" in out


def test_analyze_invalid_input_exits_1(capsys):
    code, out, _ = invoke(capsys, "analyze", str(FIXTURES / "nonassoc.json"))
    assert code == 1
    assert "violation" in out


def test_analyze_lint_violations_exit_2(capsys):
    code, out, _ = invoke(capsys, "analyze", str(FIXTURES / "unequal_m.json"))
    assert code == 2
    assert "fiat-certified-impossible" in out


def test_usage_and_input_errors_exit_1(capsys):
    assert run(["cells", "/nonexistent/path.json"]) == 1
    assert run(["gen", "ca"]) == 1  # missing --cartan
    assert run(["nonsense"]) == 1
    assert run(["klpoly", "--n", "3", "--x", "1 2 3", "--w", "2 1"]) == 1


def test_gen_ca_and_aliases(capsys):
    code, out1, _ = invoke(capsys, "gen", "ca", "--cartan", str(FIXTURES / "cartan_12.json"))
    assert code == 0
    code, out2, _ = invoke(capsys, "ca", "--cartan", str(FIXTURES / "cartan_12.json"))
    assert code == 0 and out1 == out2
    code, out3, _ = invoke(capsys, "hecke", "--n", "2")
    assert code == 0
    doc = json.loads(out3)
    assert len(doc["morphisms"]) == 2


def test_gen_ca_multi_component_round_trips(capsys):
    code, out, _ = invoke(capsys, "gen", "ca", "--cartan", str(FIXTURES / "cartan_mixed.json"))
    assert code == 0
    from fiatcells import load_multicat, make_CA, serialize_multicat

    cat = load_multicat(out)
    assert serialize_multicat(cat) == out
    assert cat == make_CA([[2, 1], [1, 2]], [[1]], [[3]])
    # 2 + 1 + 1 vertices: 16 projectives, merged identity for [[1]],
    # separate identities for the other two components
    assert len(cat.morphs) == 18


def test_hecke_guard_exit(capsys):
    code, _, err = invoke(capsys, "gen", "hecke", "--n", "9")
    assert code == 1
    assert "guarded range" in err


def test_klpoly_output(capsys):
    code, out, _ = invoke(capsys, "klpoly", "--n", "4", "--x", "1 3 2 4", "--w", "3 4 1 2")
    assert code == 0
    assert out.strip().endswith("= 1 + q")


def test_rs_output(capsys):
    code, out, _ = invoke(capsys, "rs", "--perm", "2 1")
    assert code == 0
    assert out == "P:\n  1\n  2\nQ:\n  1\n  2\n"
    code, out, _ = invoke(capsys, "rs", "--perm", "3 1 2")
    assert code == 0
    assert "1 2" in out and "1 3" in out


def test_bimod_verify_quiver(capsys):
    code, out, _ = invoke(capsys, "bimod", "verify-quiver")
    assert code == 0
    assert "4, 2, 2, 2" in out
    assert "FAIL" not in out


def test_bimod_realize_ca_matches_gen(capsys):
    code, out1, _ = invoke(capsys, "bimod", "realize-ca", "--algebras",
                           str(FIXTURES / "algebras_qd.json"))
    assert code == 0
    code, out2, _ = invoke(capsys, "gen", "ca", "--cartan", str(FIXTURES / "cartan_12.json"))
    assert code == 0 and out1 == out2


def test_bimod_hom(capsys):
    code, out, _ = invoke(capsys, "bimod", "hom",
                          "--m", str(FIXTURES / "bimod_f.json"),
                          "--n", str(FIXTURES / "bimod_f.json"))
    assert code == 0
    assert out.startswith("dim hom = 4")
    code, out, _ = invoke(capsys, "bimod", "hom",
                          "--m", str(FIXTURES / "bimod_f.json"),
                          "--n", str(FIXTURES / "bimod_id.json"))
    assert code == 0
    assert out.startswith("dim hom = 2")


def test_validate_and_lint_json(capsys):
    code, out, _ = invoke(capsys, "validate", "--json", str(FIXTURES / "nonassoc.json"))
    assert code == 2
    doc = json.loads(out)
    assert not doc["validation"]["ok"]
    assert doc["validation"]["violations"][0]["law"] == "associativity"
    code, out, _ = invoke(capsys, "lint", "--json", str(FIXTURES / "unequal_m.json"))
    assert code == 2
    doc = json.loads(out)
    assert doc["lint"]["fiat_certified_impossible"]
    failed = {c["check"] for c in doc["lint"]["checks"] if c["status"] == "fail"}
    assert "left-cell-constancy" in failed


def test_stdin_pipeline():
    gen = subprocess.run(
        [sys.executable, "-m", "fiatcells.cli", "gen", "sl2"],
        capture_output=True, text=True, check=True,
    )
    lint = subprocess.run(
        [sys.executable, "-m", "fiatcells.cli", "lint", "-"],
        input=gen.stdout, capture_output=True, text=True,
    )
    assert lint.returncode == 0
    assert "all checks pass" in lint.stdout


def test_analyze_json_m_diagonal(capsys):
    code, out, _ = invoke(capsys, "analyze", "--json", str(GOLDEN / "sl2.json"))
    assert code == 0
    doc = json.loads(out)
    assert list(doc["m_diagonal"].values()) == [1, 1, 1, 2, 2]
    assert doc["version"] == "0.1.0"


def test_analyze_hecke3_via_pipeline(capsys):
    code, table, _ = invoke(capsys, "gen", "hecke", "--n", "3")
    assert code == 0
    import io
    import sys as _sys

    stdin = _sys.stdin
    _sys.stdin = io.StringIO(table)
    try:
        code, out, _ = invoke(capsys, "analyze", "--json", "-")
    finally:
        _sys.stdin = stdin
    assert code == 0
    doc = json.loads(out)
    sections = doc["two_sided_analysis"]
    assert len(sections) == 3
    assert all(s["strongly_regular"] for s in sections)
    assert all(s["left_cell_constant"] for s in sections)

import json
from pathlib import Path

import pytest

from tropnp.cli import main

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def S(name):
    return SAMPLES / name


def test_verify_paper_example(capsys):
    code, out, _ = run(capsys, "verify-resolution", S("line_f.json"), S("line_y.json"))
    assert code == 0 and out["ok"]


def test_verify_negative_has_witness(capsys, tmp_path):
    y = tmp_path / "y.json"
    y.write_text('{"format": "tnp/1", "kind": "polynomial", "variables": ["x"], "expr": "0"}')
    code, out, _ = run(capsys, "verify-resolution", S("line_f.json"), y)
    assert code == 1 and not out["ok"] and len(out["witness"]) == 1


def test_verify_rational(capsys):
    code, out, _ = run(capsys, "verify-resolution", S("nonmonic_f.json"), S("nonmonic_y.json"), "--rational")
    assert code == 0


def test_divide(capsys):
    code, out, _ = run(capsys, "divide", S("square.json"), S("linear.json"))
    assert code == 0 and out["quotient"]["expr"] == "x ⊕ 0"
    code, out, _ = run(capsys, "divide", S("linear.json"), S("square.json"))
    assert code == 1 and out["message"] == "not divisible"


def test_eval_and_reduce(capsys):
    code, out, _ = run(capsys, "eval", S("square.json"), "--point=-1/2")
    assert code == 0 and out["value"] == "-1"
    code, out, _ = run(capsys, "reduce", S("square.json"))
    assert out["expr"] == "x^2 ⊕ 0"


def test_resolvers(capsys):
    code, out, _ = run(capsys, "resolve-monic", S("quadratic_f.json"))
    assert code == 0 and out["resolution"]["expr"] == "x ⊕ 0"
    code, out, _ = run(capsys, "resolve-rational", S("nonmonic_f.json"))
    assert out["resolution"]["expr"] == "(0) ⊘ (x ⊕ 0)"
    code, out, err = run(capsys, "resolve-monic", S("nonmonic_f.json"))
    assert code == 2 and "leading" in err


def test_prevariety_lists_three_rays_and_a_vertex(capsys, tmp_path):
    svg = tmp_path / "t.svg"
    code, out, _ = run(capsys, "prevariety", S("line_system.json"), "--svg", svg)
    assert code == 0
    assert sorted(c["dim"] for c in out["cells"]) == [0, 1, 1, 1]
    assert out["skeleton"]["counts"] == {"vertex": 1, "segment": 0, "ray": 3, "line": 0}
    assert out["skeleton"]["vertices"] == [["0", "0"]]
    assert svg.read_text().startswith("<?xml")


def test_svg_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    run(capsys, "resolve-curve", S("two_lines_system.json"), "--svg", a)
    run(capsys, "resolve-curve", S("two_lines_system.json"), "--svg", b)
    assert a.read_bytes() == b.read_bytes()


def test_resolve_curve(capsys):
    code, out, _ = run(capsys, "resolve-curve", S("line_system.json"))
    assert code == 0 and out["resolutions"][0]["values"]["y"]["expr"] == "x ⊕ 0"
    code, out, _ = run(capsys, "resolve-curve", S("nonmonic_system.json"))
    assert code == 1 and out["message"] == "not resolvable"
    code, out, _ = run(capsys, "resolve-curve", S("nonmonic_system.json"), "--rational")
    assert code == 0 and out["resolutions"][0]["verified"]
    code, out, _ = run(capsys, "resolve-curve", S("two_lines_system.json"), "--enumerate", 5)
    assert len(out["resolutions"]) == 2 and all(r["verified"] for r in out["resolutions"])


def test_reduce_3sat_dimacs_and_json(capsys, tmp_path):
    code, out, _ = run(capsys, "reduce-3sat", S("clause.cnf"))
    assert code == 0 and out["kind"] == "tropical-system" and len(out["polys"]) == 6
    j = tmp_path / "c.json"
    j.write_text('{"format": "tnp/1", "kind": "cnf", "num_vars": 3, "clauses": [[1, -2, 3]]}')
    code, out2, _ = run(capsys, "reduce-3sat", j)
    assert out2 == out


def test_brute_resolve(capsys):
    code, out, _ = run(capsys, "brute-resolve", S("line_f.json"), "--max-support", 2)
    assert code == 0 and [r["expr"] for r in out["resolutions"]] == ["x ⊕ 0"]
    code, out, _ = run(capsys, "brute-force-resolve", S("nonmonic_f.json"), "--max-support", 2)
    assert code == 1 and out["count"] == 0


@pytest.mark.parametrize("argv,needle", [
    (["eval", "missing.json", "--point", "1"], "missing.json"),
    (["eval", str(SAMPLES / "square.json"), "--point", "a"], "--point"),
    (["divide", str(SAMPLES / "line_f.json"), str(SAMPLES / "linear.json")], "$.kind"),
    (["reduce-3sat", str(SAMPLES / "linear.json")], "$.kind"),
])
def test_input_errors_exit_2(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out is None and needle in err


def test_malformed_document(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"format": "tnp/1", "kind": "polynomial", "variables": ["x"], '
                   '"monomials": [{"coeff": "1", "exps": ["1", "2"]}]}')
    code, _, err = run(capsys, "reduce", bad)
    assert code == 2 and "$.monomials[0].exps" in err

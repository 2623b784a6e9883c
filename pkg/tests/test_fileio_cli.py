import json

import pytest

from cak.cli import main
from cak.fileio import (
    SchemaError,
    load_ideal,
    load_module,
    load_ring,
    ring_from_dict,
    ring_to_dict,
    save_ring,
)
from conftest import R1_RELATIONS

R1_DICT = {
    "field": {"kind": "fp", "p": 32003},
    "vars": ["X", "Y", "Z", "W"],
    "weights": [6, 11, 16, 26],
    "relations": [s.strip() for s in R1_RELATIONS.split(";")],
}


@pytest.fixture
def r1_file(tmp_path):
    path = tmp_path / "r1.json"
    path.write_text(json.dumps(R1_DICT))
    return str(path)


@pytest.fixture
def plain_file(tmp_path):
    path = tmp_path / "plain.json"
    path.write_text(json.dumps({
        "field": {"kind": "fp", "p": 32003},
        "vars": ["x1", "x2"],
        "weights": [1, 1],
    }))
    return str(path)


def test_load_ring_valid(r1_file):
    ring = load_ring(r1_file)
    assert len(ring.vars) == 4
    assert len(ring.relations) == 4


def test_load_ring_weight_error():
    bad = dict(R1_DICT, weights=[6, 0, 16, 26])
    with pytest.raises(SchemaError, match="/weights/1"):
        ring_from_dict(bad)


def test_load_ring_inhomogeneous_relation_named():
    bad = dict(R1_DICT, relations=["X^7 - Z*W", "X + Y"])
    with pytest.raises(SchemaError, match="X \\+ Y"):
        ring_from_dict(bad)


def test_ring_round_trip(tmp_path, r1_file):
    ring = load_ring(r1_file)
    out = tmp_path / "out.json"
    save_ring(ring, str(out))
    again = load_ring(str(out))
    assert ring_to_dict(again) == ring_to_dict(ring)


def test_load_ideal(tmp_path, r1_file):
    ring = load_ring(r1_file)
    path = tmp_path / "ideal.json"
    path.write_text(json.dumps(["X", "Z", "W"]))
    gens = load_ideal(str(path), ring)
    assert [str(g) for g in gens] == ["X", "Z", "W"]


def test_load_module_schema_errors(tmp_path, r1_file):
    ring = load_ring(r1_file)
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"ambient_twists": [0], "relations": [["X"], ["Y"]]}))
    with pytest.raises(SchemaError, match="/relations"):
        load_module(str(path), ring)
    path.write_text(json.dumps({"relations": [["X"]]}))
    with pytest.raises(SchemaError, match="ambient_twists"):
        load_module(str(path), ring)


def test_cli_gb_matches_library(plain_file, capsys):
    code = main(["gb", "--ring", plain_file, "--gens", "x1^2 - x2; x2^2"])
    assert code == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out == ["x2^2", "x1^2 - x2"]


def test_cli_resolve_spec_payload(tmp_path, capsys):
    amb = tmp_path / "amb.json"
    amb.write_text(json.dumps(dict(R1_DICT, relations=[])))
    code = main(["resolve", "--ring", str(amb), "--gens", R1_RELATIONS])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == {"betti", "complete"}
    assert payload["complete"] is True
    totals = {}
    for i, _j, rank in payload["betti"]:
        totals[i] = totals.get(i, 0) + rank
    assert [totals[i] for i in sorted(totals)] == [1, 4, 5, 2]


def test_cli_betti_formula(capsys):
    assert main(["betti-formula", "4", "2", "1"]) == 0
    assert json.loads(capsys.readouterr().out) == [1, 4, 5, 2]


def test_cli_ulrich_exit_codes(r1_file, capsys):
    assert main([
        "ulrich", "--ring", r1_file, "--ideal", "X; Z; W",
        "--reduction", "X", "--dim", "1",
    ]) == 0
    assert main([
        "ulrich", "--ring", r1_file, "--ideal", "X",
        "--reduction", "X", "--dim", "1",
    ]) == 1  # I = q is not an Ulrich ideal
    capsys.readouterr()


def test_cli_usage_error_exit_code(tmp_path, capsys):
    missing = str(tmp_path / "nope.json")
    assert main(["gb", "--ring", missing, "--gens", "x"]) == 2
    capsys.readouterr()


def test_cli_resource_limit_exit_code(tmp_path, capsys):
    amb = tmp_path / "amb6.json"
    amb.write_text(json.dumps({
        "field": {"kind": "fp", "p": 32003},
        "vars": [f"x{i}" for i in range(1, 7)],
        "weights": [1] * 6,
    }))
    gens = "; ".join(
        f"x{i}*x{j} - x{(i + j) % 6 + 1}" for i in range(1, 6) for j in range(i, 6)
    )
    assert main(["gb", "--ring", str(amb), "--gens", gens, "--budget", "2"]) == 3
    capsys.readouterr()


def test_cli_family_and_det_reduce(capsys):
    assert main(["family-2x3", "--n", "8"]) == 0
    assert main(["det-reduce", "--s", "2", "--t", "3"]) == 0
    capsys.readouterr()


def test_cli_semigroup_emit_ring(tmp_path, capsys):
    out = tmp_path / "sg.json"
    assert main(["semigroup", "6", "11", "16", "26", "--emit-ring", str(out)]) == 0
    capsys.readouterr()
    ring = load_ring(str(out))
    assert ring.weights == (6, 11, 16, 26)
    assert len(ring.relations) == 4


def test_cli_ext_and_ar(tmp_path, capsys):
    dual = tmp_path / "dual.json"
    dual.write_text(json.dumps({
        "field": {"kind": "fp", "p": 32003},
        "vars": ["X"],
        "weights": [1],
        "relations": ["X^2"],
    }))
    kmod = tmp_path / "k.json"
    kmod.write_text(json.dumps({"ambient_twists": [0], "relations": [["X"]]}))
    assert main(["ext", "--ring", str(dual), "--module", str(kmod),
                 "--against", "self", "--bound", "3"]) == 0
    assert json.loads(capsys.readouterr().out) == [1, 1, 1]
    assert main(["ar-check", "--ring", str(dual), "--module", str(kmod),
                 "--bound", "4", "--json"]) == 0
    verdict = json.loads(capsys.readouterr().out)
    assert verdict["classification"] == "hypothesis_fails"
    assert verdict["first_nonvanishing"] == [1, "Ext(M,M)"]


def test_cli_verify_paper_filter(capsys):
    assert main(["verify-paper", "--filter", "c03*", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert [c["id"] for c in payload["cases"]] == ["c03_toric_kernel"]
    assert payload["passed"] is True


def test_cli_verify_paper_empty_filter(capsys):
    assert main(["verify-paper", "--filter", "zzz*"]) == 0
    err = capsys.readouterr().err
    assert "matched no cases" in err


def test_cli_json_report_round_trips(capsys):
    assert main(["verify-paper", "--filter", "c01*", "--json"]) == 0
    text = capsys.readouterr().out
    payload = json.loads(text)
    assert json.loads(json.dumps(payload)) == payload


def test_load_rational_ring(tmp_path):
    path = tmp_path / "q.json"
    path.write_text(json.dumps({
        "field": {"kind": "q"},
        "vars": ["x"],
        "weights": [1],
        "relations": ["x^2"],
    }))
    ring = load_ring(str(path))
    assert ring.field.kind == "q"
    assert [str(r) for r in ring.relations] == ["x^2"]


def test_cli_golden_against_library(tmp_path, capsys):
    """Every subcommand is a thin wrapper: identical output to library calls."""
    from cak import RingPresentation, parse_poly, parse_poly_list
    from cak.groebner import IdealHandle
    from cak.quotient import QuotientRing, socle_dim, embedding_dim, cm_type

    plain = tmp_path / "plain.json"
    plain.write_text(json.dumps({
        "field": {"kind": "fp", "p": 32003},
        "vars": ["x1", "x2"], "weights": [1, 1],
    }))
    artin = tmp_path / "artin.json"
    artin.write_text(json.dumps({
        "field": {"kind": "fp", "p": 32003},
        "vars": ["x1", "x2"], "weights": [1, 1],
        "relations": ["x1^2", "x1*x2", "x2^2"],
    }))
    ring = RingPresentation(["x1", "x2"], [1, 1])

    def run(args):
        assert main(args) == 0
        return capsys.readouterr().out.strip()

    # nf
    out = run(["nf", "--ring", str(plain), "--gens", "x1^2 - x2", "--poly", "x1^4"])
    lib = IdealHandle(ring, parse_poly_list("x1^2 - x2", ring)).normal_form(
        parse_poly("x1^4", ring)
    )
    assert out == str(lib)
    # ideal-op power
    out = run(["ideal-op", "--ring", str(plain), "--op", "power",
               "--gens", "x1; x2", "--exponent", "2", "--json"])
    lib_gb = IdealHandle(ring, parse_poly_list("x1; x2", ring)).power(2).groebner_basis()
    assert json.loads(out) == [str(g) for g in lib_gb]
    # kernel (default target k[t])
    w = tmp_path / "w.json"
    w.write_text(json.dumps({"field": {"kind": "fp", "p": 32003},
                             "vars": ["X", "Y"], "weights": [2, 3]}))
    out = run(["kernel", "--ring", str(w), "--images", "t^2; t^3"])
    assert out.splitlines() == ["X^3 - Y^2"]
    # koszul / en / minors
    assert json.loads(run(["koszul", "--ring", str(plain), "--elems", "x1; x2", "--json"])) == [1, 2, 1]
    assert json.loads(run(["en", "--ring", str(plain),
                           "--matrix", "x1,x2,0; 0,x1,x2", "--json"])) == [1, 3, 2]
    out = run(["minors", "--ring", str(plain), "--matrix", "x1,x2,0; 0,x1,x2",
               "--size", "2", "--json"])
    assert json.loads(out) == ["x1^2", "x1*x2", "x2^2"]
    # socle / embdim / type on the Artinian ring
    art_ring = QuotientRing(
        RingPresentation(["x1", "x2"], [1, 1], relations=["x1^2", "x1*x2", "x2^2"])
    )
    assert run(["socle", "--ring", str(artin)]) == str(socle_dim(art_ring))
    assert run(["embdim", "--ring", str(artin)]) == str(embedding_dim(art_ring.presentation))
    assert run(["type", "--ring", str(artin), "--params", ""]) == str(socle_dim(art_ring))
    # tor over the dual numbers
    dual = tmp_path / "dual.json"
    dual.write_text(json.dumps({"field": {"kind": "fp", "p": 32003},
                                "vars": ["X"], "weights": [1], "relations": ["X^2"]}))
    kmod = tmp_path / "kmod.json"
    kmod.write_text(json.dumps({"ambient_twists": [0], "relations": [["X"]]}))
    assert json.loads(run(["tor", "--ring", str(dual), "--module", str(kmod),
                           "--against", "self", "--bound", "3"])) == [1, 1, 1]
    # betti table on a module file
    mmod = tmp_path / "mmod.json"
    mmod.write_text(json.dumps({"ambient_twists": [0, 0],
                                "relations": [["x1"], ["x2"]]}))
    out = run(["betti", "--ring", str(plain), "--module", str(mmod)])
    assert "total:" in out

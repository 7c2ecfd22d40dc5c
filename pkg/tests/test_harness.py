import json

import pytest

from adjlab.harness.anchors import ANCHORS, check_anchors
from adjlab.harness.cli import main, parse_catalog, run_target
from adjlab.harness.document import parse_document
from adjlab.harness.report import Report, jsonable
from adjlab.harness.scenarios import CATALOG
from adjlab.errors import ParseError

EXPECTED = {
    "example_3_1_toric", "example_3_1_embedded_modp", "example_3_2", "node_suite", "prop_4_3",
    "eq3_random", "inversion_subspace", "mld_corpus", "jet_estimate_cross",
}


def test_catalog_contents_and_round_trip(capsys):
    assert set(CATALOG) == EXPECTED
    assert CATALOG["example_3_1_embedded_modp"].stretch
    assert main(["list", "--json"]) == 0
    parsed = parse_catalog(capsys.readouterr().out)
    assert set(parsed) == EXPECTED
    assert all(entry["anchors"] for entry in parsed.values())


def test_check_anchors_against_a_source(tmp_path):
    src = tmp_path / "source.tex"
    src.write_text("\n".join(ANCHORS.values()))
    assert check_anchors(src.read_text()) == []
    assert main(["check-anchors", "--source", str(src)]) == 0
    src.write_text("nothing here")
    assert main(["check-anchors", "--source", str(src)]) == 1


def test_reports_are_deterministic_and_float_free():
    a = run_target("node_suite", seed=4)
    b = run_target("node_suite", seed=4)
    assert a.body_json() == b.body_json()
    assert a.exit_status == 0
    with pytest.raises(TypeError):
        jsonable(0.5)


def test_scenario_isolation():
    first = run_target("inversion_subspace").body_json()
    run_target("mld_corpus")
    assert run_target("inversion_subspace").body_json() == first


def test_exit_status_rules():
    r = Report("x", 0, "q", {})
    r.record("a", "", "inconclusive")
    assert r.exit_status == 0
    r.record("b", "", "error")
    assert r.exit_status == 2
    r.record("c", "", "fail")
    assert r.exit_status == 1


def test_document_run_and_expectations(tmp_path):
    doc = {
        "ring": {"vars": ["x", "y"], "char": 0},
        "ideals": {"I": ["x^2", "x*y"], "J": ["y"]},
        "tasks": [
            {"op": "quotient", "args": {"left": "I", "right": "J"}, "store": "K", "expect": ["x"]},
            {"op": "dimension", "args": {"ideal": "K"}, "expect": 1},
            {"op": "equal", "args": {"left": "K", "right": ["x"]}, "expect": True},
            {"op": "inversion_check", "args": {"ideal": ["x", "y"]}, "expect": "refused"},
            {"op": "dimension", "args": {"ideal": "I"}, "expect": 0},
        ],
    }
    path = tmp_path / "doc.json"
    path.write_text(json.dumps(doc, indent=1))
    rep = run_target(str(path))
    statuses = [a["status"] for a in rep.body()["assertions"]]
    assert statuses == ["pass", "pass", "pass", "pass", "fail"]
    assert rep.exit_status == 1


def test_single_op_with_input_file(tmp_path):
    path = tmp_path / "pair.json"
    path.write_text(json.dumps({"N": 4, "boundary": [], "expect": 4}))
    rep = run_target("mld_monomial", input_path=str(path))
    assert rep.exit_status == 0
    assert rep.body()["assertions"][0]["witness"]["result"]["value"] == "4"


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as info:
        parse_document('{\n "ring": {"vars": ["x"]},\n "ideals": {"I": ["x^2 +* 1"]}\n}')
    assert (info.value.line, info.value.column) == (3, 25)
    with pytest.raises(ParseError) as info:
        parse_document('{\n "ring": {"vars": ["x"]},\n}')
    assert info.value.line == 3


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["run", str(bad)]) == 2
    assert main(["run", "example_3_1_embedded_modp"]) == 2
    out = tmp_path / "r.json"
    assert main(["run", "inversion_subspace", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["summary"]["fail"] == 0 and "timing_ms" in data


def test_pfaffian_scenario_over_prime_field():
    rep = run_target("example_3_2", field="p:32003")
    assert rep.exit_status == 0
    assert rep.field == "p:32003"

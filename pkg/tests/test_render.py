import json
import re
from collections import Counter

from argus.ial import parse_ial
from argus.render import dumps_json, to_dot, to_json
from argus.sacm import AssuranceModel, references
from argus.validator import ClaimStatus, validate


def _model(path):
    els, diags = parse_ial(path.read_text())
    model, vdiags = validate(els)
    assert not [d for d in diags + vdiags if d.is_error]
    return model


def test_empty_model_renders_an_empty_digraph():
    dot = to_dot(AssuranceModel(), "empty")
    assert dot.startswith('digraph "empty" {') and dot.rstrip().endswith("}")
    assert "->" not in dot and "shape=" not in dot
    assert to_json(AssuranceModel()) == {"name": "argument", "nodes": [], "edges": []}


def test_gsn_shapes_and_edges(corpus):
    dot = to_dot(_model(corpus / "gsn_example.ial"), "GSN_Example")
    assert dot.count('shape="box"') == 5  # four claims plus the rounded context artifact
    assert dot.count('style="rounded"') == 1
    assert dot.count('shape="ellipse"') == 1
    assert dot.count('shape="parallelogram"') == 1
    assert '"C1" -> "I1"' in dot and '"I1" -> "C4"' in dot
    assert re.search(r'"C2" -> "Hazard_Log" \[style="dashed", arrowhead="empty"\]', dot)
    assert re.search(r'"C3" -> "FV1" \[style="solid", arrowhead="normal"\]', dot)
    # the undeveloped claim is dashed
    assert re.search(r'"C4" \[shape="box", label="[^"]*", style="dashed"\]', dot)


def test_statuses_appear_in_labels(corpus):
    model = _model(corpus / "gsn_example.ial")
    dot = to_dot(model, "g", {"C1": ClaimStatus.UNSUPPORTED})
    assert "Unsupported" in dot


def test_labels_are_escaped():
    els, _ = parse_ial('module T\nClaim C axiomatic """say "hi" \\ there"""')
    model, _ = validate(els)
    dot = to_dot(model)
    assert '\\"hi\\"' in dot and "\\\\" in dot


def test_json_has_one_edge_per_reference(corpus):
    for name in ("gsn_example.ial", "tis_sfrs.ial"):
        model = _model(corpus / name)
        data = json.loads(dumps_json(model, name))
        got = Counter((e["source"], e["target"], e["role"]) for e in data["edges"])
        want = Counter((el.gid, r.target, r.role) for el in model.elements.values() for r in references(el))
        assert got == want
        assert {n["gid"] for n in data["nodes"]} == set(model.elements)


def test_json_keeps_formal_links_and_attributes(corpus):
    data = to_json(_model(corpus / "tis_sfrs.ial"), "TIS_SFRs")
    by_gid = {n["gid"]: n for n in data["nodes"]}
    assert {"kind": "Obligation", "target": "FSFR1_thm"} in by_gid["FSFR1_Proof"]["formal"]
    assert by_gid["FSFR1_Proof_Theory"]["location"] == "corpus/tokeneer_mini.gcl"
    assert by_gid["FSFR1_V1"]["declaration"] == "assumed"

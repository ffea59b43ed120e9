import copy
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harm import network_metrics as nm
from harm.errors import (
    DanglingEdgeError,
    DuplicateHostError,
    MissingFieldError,
    ModelValidationError,
    SpecFormatError,
    SpecSyntaxError,
    UnknownSchemaVersionError,
)
from harm.host_metrics import host_metrics
from harm.ingest import fixture_text, load_network_spec, parse_network_spec, serialize_network_spec
from harm.model import NetworkModel, paper_example_model, validate_model
from harm.paths import enumerate_paths

from strategies import models, trees


def fixture_doc():
    return json.loads(fixture_text())


def dump(doc):
    return json.dumps(doc)


def test_fixture_file_parses_to_builtin(fixture_file):
    assert load_network_spec(fixture_file) == paper_example_model()


def test_shipped_fixture_is_canonical(fixture_file):
    text = fixture_file.read_text("utf-8")
    assert text == fixture_text()
    assert serialize_network_spec(paper_example_model()) == text


def test_missing_target():
    with pytest.raises(MissingFieldError, match="missing target"):
        parse_network_spec('{"schema_version": "1", "hosts": [], "edges": []}')


def test_missing_attacker():
    doc = fixture_doc()
    del doc["attacker"]
    with pytest.raises(MissingFieldError, match="missing attacker"):
        parse_network_spec(dump(doc))


def test_prob_defaults_from_base_score():
    doc = fixture_doc()
    del doc["hosts"][0]["vulnerabilities"]["prob"]
    m = parse_network_spec(dump(doc))
    assert m.hosts["h1"].attack_tree.vulnerability.prob == 0.75


def test_explicit_prob_kept():
    doc = fixture_doc()
    doc["hosts"][0]["vulnerabilities"]["prob"] = 0.5
    assert parse_network_spec(dump(doc)).hosts["h1"].attack_tree.vulnerability.prob == 0.5


def test_syntax_error_reports_position():
    with pytest.raises(SpecSyntaxError) as exc:
        parse_network_spec('{\n  "schema_version": "1",\n  "hosts": [,]\n}')
    assert (exc.value.line, exc.value.column) == (3, 13)
    assert "line 3" in str(exc.value)


@pytest.mark.parametrize("text", ['{"a": NaN}', b'\xff\xfe'])
def test_non_json_rejected(text):
    with pytest.raises(SpecSyntaxError):
        parse_network_spec(text)


def test_unknown_schema_version():
    doc = fixture_doc()
    doc["schema_version"] = "2"
    with pytest.raises(UnknownSchemaVersionError):
        parse_network_spec(dump(doc))


def test_duplicate_host():
    doc = fixture_doc()
    doc["hosts"].append(copy.deepcopy(doc["hosts"][0]))
    with pytest.raises(DuplicateHostError, match="h1"):
        parse_network_spec(dump(doc))


def test_dangling_edge():
    doc = fixture_doc()
    doc["edges"].append(["h1", "h9"])
    with pytest.raises(DanglingEdgeError, match="h9") as exc:
        parse_network_spec(dump(doc))
    assert exc.value.missing == "h9"


def test_invariant_violations_are_collected():
    doc = fixture_doc()
    doc["hosts"][0]["vulnerabilities"]["base_score"] = 11
    doc["hosts"][1]["asset_value"] = -1
    doc["edges"].append(["h3", "Internet"])
    with pytest.raises(ModelValidationError) as exc:
        parse_network_spec(dump(doc))
    msgs = [str(v) for v in exc.value.violations]
    assert len(msgs) == 3
    assert any("h1" in s and "base_score" in s for s in msgs)
    assert any("h2" in s for s in msgs)
    assert "attacker cannot be an edge destination" in msgs


def test_gate_expressions_and_patched():
    doc = fixture_doc()
    leaf = doc["hosts"][0]["vulnerabilities"]
    other = dict(leaf, cve="CVE-X", base_score=5.0, impact=2.0, cost=1.0)
    del other["prob"]
    doc["hosts"][0]["vulnerabilities"] = {"gate": "or", "children": [
        leaf, {"gate": "and", "children": [other, other]}]}
    doc["hosts"][1]["patched"] = True
    m = parse_network_spec(dump(doc))
    hm = host_metrics(m.hosts["h1"])
    assert hm.impact == 7.0
    assert hm.prob == pytest.approx(1 - 0.25 * 0.75)
    assert m.hosts["h2"].patched
    again = parse_network_spec(serialize_network_spec(m))
    assert again == m


@pytest.mark.parametrize("mutate, error", [
    (lambda d: d.update(hosts={}), SpecFormatError),
    (lambda d: d["hosts"][0].update(asset_value="40"), SpecFormatError),
    (lambda d: d["hosts"][0].update(asset_value=True), SpecFormatError),
    (lambda d: d["hosts"][0].update(patched="yes"), SpecFormatError),
    (lambda d: d["hosts"][0].pop("vulnerabilities"), MissingFieldError),
    (lambda d: d["hosts"][0]["vulnerabilities"].pop("cost"), MissingFieldError),
    (lambda d: d["hosts"][0].update(vulnerabilities={"gate": "xor", "children": []}),
     SpecFormatError),
    (lambda d: d["hosts"][0].update(vulnerabilities={"gate": "and", "children": []}),
     ModelValidationError),
    (lambda d: d["edges"].append(["h1"]), SpecFormatError),
    (lambda d: d.update(target="h9"), ModelValidationError),
    (lambda d: d.pop("schema_version"), MissingFieldError),
    (lambda d: d["edges"].append(["h1", "h1"]), ModelValidationError),
])
def test_rejection_categories(mutate, error):
    doc = fixture_doc()
    mutate(doc)
    with pytest.raises(error):
        parse_network_spec(dump(doc))


_FIELD_MUTATIONS = [
    ("base_score", -0.5), ("base_score", 10.5), ("prob", 1.5), ("prob", -0.1),
    ("impact", -1.0), ("cost", 0.0), ("cost", -3.0), ("cve", ""),
]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 6), st.sampled_from(_FIELD_MUTATIONS))
def test_mutated_fixture_rejected_naming_host(i, mutation):
    doc = fixture_doc()
    field, value = mutation
    doc["hosts"][i]["vulnerabilities"][field] = value
    with pytest.raises(ModelValidationError) as exc:
        parse_network_spec(dump(doc))
    (v,) = exc.value.violations
    assert v.entity.startswith(doc["hosts"][i]["id"])


def test_canonical_ordering():
    m = paper_example_model()
    shuffled = NetworkModel.build(reversed(list(m.hosts.values())), m.graph.edges,
                                  "Internet", "h7")
    a, b = serialize_network_spec(m), serialize_network_spec(shuffled)
    assert a == b
    ids = [h["id"] for h in json.loads(a)["hosts"]]
    assert ids == sorted(ids)
    assert json.loads(a)["edges"] == sorted(json.loads(a)["edges"])


def test_defaulted_and_explicit_prob_serialize_identically():
    doc = fixture_doc()
    for h in doc["hosts"]:
        del h["vulnerabilities"]["prob"]
    assert serialize_network_spec(parse_network_spec(dump(doc))) == fixture_text()


def _all_metrics(m):
    paths = enumerate_paths(m)
    out = {"paths": [p.hosts for p in paths],
           "hosts": {h: host_metrics(x) for h, x in m.hosts.items()}}
    if len(paths):
        out["composite"] = nm.composite_metrics(m, paths)
        out["lengths"] = (nm.mean_path_length(paths), nm.stddev_path_length(paths),
                          nm.mode_path_length(paths), nm.median_path_length(paths))
        out["ncp"] = nm.ncp(m, paths, 1)
        out["vhp"] = nm.vhp(m, paths)
        try:
            out["ar"] = nm.attack_resistance(m, paths)
        except Exception as exc:  # degenerate models must fail the same way
            out["ar"] = type(exc)
    return out


@settings(max_examples=100, deadline=None)
@given(models(max_hosts=6, tree_strategy=trees(max_leaves=3)))
def test_round_trip_metric_equivalence(m):
    text = serialize_network_spec(m)
    again = parse_network_spec(text)
    assert validate_model(again).ok
    assert again == m
    assert _all_metrics(again) == _all_metrics(m)
    assert serialize_network_spec(again) == text

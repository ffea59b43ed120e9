from dataclasses import FrozenInstanceError, replace

import pytest

from harm.model import (
    AttackGraph,
    Gate,
    GateKind,
    Host,
    Leaf,
    NetworkModel,
    Vulnerability,
    leaves,
    paper_example_model,
    validate_model,
)


def leaf(cve="CVE-1", score=5.0, prob=None, impact=1.0, cost=1.0):
    return Leaf(Vulnerability.from_score(cve, score, impact, cost, prob=prob))


def host(hid, tree=None, asset=1.0):
    return Host(hid, hid, asset, tree or leaf())


def messages(model):
    return [str(v) for v in validate_model(model).violations]


def test_fixture_validates(fixture_model):
    result = validate_model(fixture_model)
    assert result.ok
    assert result.violations == ()


def test_fixture_table_values(fixture_model):
    v = fixture_model.hosts["h1"].attack_tree.vulnerability
    assert (v.prob, v.impact, v.cost) == (0.75, 7.0, 8.0)
    assert fixture_model.hosts["h1"].asset_value == 40.0
    assert fixture_model.hosts["h3"].attack_tree.vulnerability.cost == 5.0


def test_fixture_probabilities_are_scores_over_ten(fixture_model):
    probs = {h: x.attack_tree.vulnerability.prob for h, x in fixture_model.hosts.items()}
    assert probs == {"h1": 0.75, "h2": 0.35, "h3": 0.43, "h4": 0.21,
                     "h5": 0.93, "h6": 0.71, "h7": 0.44}


def test_fixture_firewall_rules(fixture_model):
    assert fixture_model.graph.predecessors("h7") == ["h4", "h5", "h6"]
    assert fixture_model.graph.successors("Internet") == ["h1", "h2"]
    assert len(fixture_model.graph.edges) == 9
    assert fixture_model.attacker_id == "Internet"
    assert fixture_model.target_id == "h7"


def test_fixture_hosts_are_single_leaves(fixture_model):
    assert all(isinstance(h.attack_tree, Leaf) for h in fixture_model.hosts.values())


def test_model_is_immutable(fixture_model):
    with pytest.raises(FrozenInstanceError):
        fixture_model.target_id = "h1"
    with pytest.raises(TypeError):
        fixture_model.hosts["h8"] = host("h8")


def test_explicit_prob_overrides_default():
    assert Vulnerability.from_score("CVE-1", 7.5, 1, 1).prob == 0.75
    assert Vulnerability.from_score("CVE-1", 7.5, 1, 1, prob=0.2).prob == 0.2


def test_dangling_edge_endpoint():
    m = NetworkModel.build([host("h1")], [("a", "h1"), ("h1", "h9")], "a", "h1")
    assert "unknown edge endpoint h9" in messages(m)


def test_attacker_as_destination():
    m = NetworkModel.build([host("h1"), host("h3")], [("a", "h1"), ("h3", "a")], "a", "h1")
    assert "attacker cannot be an edge destination" in messages(m)


def test_all_violations_reported_not_just_first():
    bad = Leaf(Vulnerability("CVE-x", 11.0, 1.5, -1.0, 0.0))
    m = NetworkModel.build(
        [host("h1", bad, asset=-3), host("h2")],
        [("a", "h1"), ("h1", "h1"), ("h2", "a"), ("h1", "zz")],
        "a", "nope",
    )
    msgs = messages(m)
    for needle in ("base_score", "prob", "negative impact", "non-positive cost",
                   "negative asset_value", "self-loop on h1", "attacker cannot be",
                   "unknown edge endpoint zz", "target nope"):
        assert any(needle in s for s in msgs), needle
    assert len(msgs) >= 9


def test_violations_name_entities():
    m = NetworkModel.build([host("h1", leaf(score=12.0, prob=0.5))], [("a", "h1")], "a", "h1")
    (v,) = validate_model(m).violations
    assert v.entity.startswith("h1")


def test_empty_gate_and_empty_cve():
    m = NetworkModel.build([host("h1", Gate(GateKind.OR, ())), host("h2", leaf(cve=""))],
                           [("a", "h1")], "a", "h1")
    msgs = messages(m)
    assert any("gate without children in host h1" in s for s in msgs)
    assert any("empty cve_id in h2" in s for s in msgs)


def test_attacker_must_not_be_host():
    m = NetworkModel.build([host("a"), host("h1")], [("a", "h1")], "a", "h1")
    assert any("must not be a host" in s for s in messages(m))


def test_duplicate_host_ids():
    m = NetworkModel.build([host("h1"), host("h1")], [], "a", "h1")
    assert "duplicate host id h1" in messages(m)


def test_graph_node_set_mismatch():
    hosts = {"h1": host("h1")}
    g = AttackGraph({"a", "h1", "ghost"}, set())
    assert any("ghost" in s for s in messages(NetworkModel(hosts, g, "a", "h1")))
    g = AttackGraph({"h1"}, set())
    msgs = messages(NetworkModel(hosts, g, "a", "h1"))
    assert any("attacker a is not a graph node" in s for s in msgs)


def test_ids_are_case_sensitive():
    m = NetworkModel.build([host("H1"), host("h1")], [("a", "h1"), ("h1", "H1")], "a", "H1")
    assert validate_model(m).ok
    assert len(m.hosts) == 2


def test_leaves_in_order():
    t = Gate.and_(leaf("A"), Gate.or_(leaf("B"), leaf("C")), leaf("D"))
    assert [v.cve_id for v in leaves(t)] == ["A", "B", "C", "D"]


def test_model_equality_ignores_insertion_order(fixture_model):
    hosts = list(fixture_model.hosts.values())[::-1]
    again = NetworkModel.build(hosts, sorted(fixture_model.graph.edges), "Internet", "h7")
    assert again == fixture_model
    assert replace(fixture_model, target_id="h6") != fixture_model


def test_paper_example_model_is_fresh():
    assert paper_example_model() == paper_example_model()

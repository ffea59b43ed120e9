"""Immutable domain model for the two-layer HARM.

The upper layer is a reachability graph over hosts plus one attacker node;
the lower layer is one AND/OR attack tree per host whose leaves are
vulnerabilities.

Constructors do not enforce invariants. Use :func:`validate_model` to get
the full list of violations for a model.
"""

from __future__ import annotations

import enum
import math
from decimal import Decimal
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "Vulnerability",
    "GateKind",
    "Leaf",
    "Gate",
    "AttackTreeNode",
    "Host",
    "AttackGraph",
    "NetworkModel",
    "Violation",
    "ValidationResult",
    "validate_model",
    "paper_example_model",
    "leaves",
]


@dataclass(frozen=True)
class Vulnerability:
    cve_id: str
    base_score: float
    prob: float
    impact: float
    cost: float

    @classmethod
    def from_score(cls, cve_id: str, base_score: float, impact: float, cost: float,
                   prob: float | None = None) -> "Vulnerability":
        """Build a vulnerability, defaulting ``prob`` to ``base_score / 10``."""
        if prob is None:
            # decimal division so 2.1 -> 0.21 rather than 0.21000000000000002
            prob = float(Decimal(repr(float(base_score))) / 10)
        return cls(cve_id, float(base_score), float(prob), float(impact), float(cost))


class GateKind(enum.Enum):
    AND = "and"
    OR = "or"


@dataclass(frozen=True)
class Leaf:
    vulnerability: Vulnerability


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    @classmethod
    def and_(cls, *children: "AttackTreeNode") -> "Gate":
        return cls(GateKind.AND, children)

    @classmethod
    def or_(cls, *children: "AttackTreeNode") -> "Gate":
        return cls(GateKind.OR, children)


AttackTreeNode = Union[Leaf, Gate]


def leaves(tree: AttackTreeNode) -> Iterator[Vulnerability]:
    """Yield the vulnerabilities of ``tree`` in left-to-right order."""
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            yield node.vulnerability
        else:
            stack.extend(reversed(node.children))


@dataclass(frozen=True)
class Host:
    id: str
    name: str
    asset_value: float
    attack_tree: AttackTreeNode
    # neutralized vulnerabilities: folds to zero probability and impact
    patched: bool = False


@dataclass(frozen=True)
class AttackGraph:
    nodes: frozenset
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))

    def successors(self, node: str) -> list[str]:
        return sorted(dst for src, dst in self.edges if src == node)

    def predecessors(self, node: str) -> list[str]:
        return sorted(src for src, dst in self.edges if dst == node)


@dataclass(frozen=True)
class NetworkModel:
    hosts: Mapping[str, Host]
    graph: AttackGraph
    attacker_id: str
    target_id: str
    _duplicates: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "hosts", MappingProxyType(dict(self.hosts)))

    @classmethod
    def build(cls, hosts: Iterable[Host], edges: Iterable[tuple[str, str]],
              attacker: str, target: str) -> "NetworkModel":
        """Assemble a model; graph nodes are the attacker plus every host id."""
        table: dict[str, Host] = {}
        duplicates = []
        for h in hosts:
            if h.id in table:
                duplicates.append(h.id)
            table[h.id] = h
        graph = AttackGraph(frozenset(table) | {attacker}, frozenset(edges))
        return cls(table, graph, attacker, target, tuple(duplicates))


@dataclass(frozen=True)
class Violation:
    entity: str
    message: str

    def __str__(self) -> str:
        return self.message


@dataclass(frozen=True)
class ValidationResult:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _finite(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _check_vulnerability(v: Vulnerability, where: str, out: list[Violation]) -> None:
    if not isinstance(v.cve_id, str) or not v.cve_id:
        out.append(Violation(where, f"empty cve_id in {where}"))
    label = f"{where}:{v.cve_id}"
    if not (_finite(v.base_score) and 0 <= v.base_score <= 10):
        out.append(Violation(label, f"base_score {v.base_score!r} outside [0, 10] in {label}"))
    if not (_finite(v.prob) and 0 <= v.prob <= 1):
        out.append(Violation(label, f"prob {v.prob!r} outside [0, 1] in {label}"))
    if not (_finite(v.impact) and v.impact >= 0):
        out.append(Violation(label, f"negative impact {v.impact!r} in {label}"))
    if not (_finite(v.cost) and v.cost > 0):
        out.append(Violation(label, f"non-positive cost {v.cost!r} in {label}"))


def _check_tree(tree, host_id: str, out: list[Violation]) -> None:
    on_stack: set[int] = set()

    def walk(node):
        if isinstance(node, Leaf):
            if not isinstance(node.vulnerability, Vulnerability):
                out.append(Violation(host_id, f"leaf without vulnerability in host {host_id}"))
                return
            _check_vulnerability(node.vulnerability, host_id, out)
        elif isinstance(node, Gate):
            if id(node) in on_stack:
                out.append(Violation(host_id, f"cyclic attack tree in host {host_id}"))
                return
            if not isinstance(node.kind, GateKind):
                out.append(Violation(host_id, f"unknown gate kind {node.kind!r} in host {host_id}"))
            if not node.children:
                out.append(Violation(host_id, f"gate without children in host {host_id}"))
            on_stack.add(id(node))
            for child in node.children:
                walk(child)
            on_stack.discard(id(node))
        else:
            out.append(Violation(host_id, f"invalid tree node {node!r} in host {host_id}"))

    walk(tree)


def validate_model(model: NetworkModel) -> ValidationResult:
    """Check every model invariant and collect all violations."""
    out: list[Violation] = []
    for dup in model._duplicates:
        out.append(Violation(dup, f"duplicate host id {dup}"))
    for key, host in model.hosts.items():
        if key != host.id:
            out.append(Violation(key, f"host registered as {key} has id {host.id}"))
        if not (_finite(host.asset_value) and host.asset_value >= 0):
            out.append(Violation(host.id, f"negative asset_value {host.asset_value!r} in host {host.id}"))
        _check_tree(host.attack_tree, host.id, out)

    graph = model.graph
    attacker = model.attacker_id
    if attacker in model.hosts:
        out.append(Violation(attacker, f"attacker {attacker} must not be a host"))
    if attacker not in graph.nodes:
        out.append(Violation(attacker, f"attacker {attacker} is not a graph node"))
    if model.target_id not in model.hosts:
        out.append(Violation(model.target_id, f"target {model.target_id} is not a declared host"))
    expected = set(model.hosts) | {attacker}
    for extra in sorted(set(graph.nodes) - expected):
        out.append(Violation(extra, f"graph node {extra} is neither a host nor the attacker"))
    for missing in sorted(expected - set(graph.nodes)):
        out.append(Violation(missing, f"node {missing} missing from graph"))

    reported: set[str] = set()
    for src, dst in sorted(graph.edges):
        for end in (src, dst):
            if end not in graph.nodes and end not in reported:
                reported.add(end)
                out.append(Violation(end, f"unknown edge endpoint {end}"))
        if src == dst:
            out.append(Violation(src, f"self-loop on {src}"))
        if dst == attacker:
            out.append(Violation(src, "attacker cannot be an edge destination"))
    return ValidationResult(tuple(out))


_TABLE6 = [
    # id, cve, base score, impact, cost, asset value
    ("h1", "CVE-2016-2386", 7.5, 7.0, 8.0, 40.0),
    ("h2", "CVE-2016-2040", 3.5, 4.0, 4.2, 21.0),
    ("h3", "CVE-2016-0059", 4.3, 5.0, 5.0, 25.0),
    ("h4", "CVE-2015-7974", 2.1, 3.0, 3.5, 17.5),
    ("h5", "CVE-2015-2542", 9.3, 9.0, 9.2, 46.0),
    ("h6", "CVE-2014-2706", 7.1, 6.5, 7.5, 37.5),
    ("h7", "CVE-2013-2035", 4.4, 4.3, 5.5, 27.5),
]

_FIREWALL = [
    ("Internet", "h1"), ("Internet", "h2"), ("h1", "h3"), ("h3", "h4"),
    ("h2", "h5"), ("h2", "h6"), ("h4", "h7"), ("h5", "h7"), ("h6", "h7"),
]


def paper_example_model() -> NetworkModel:
    """The seven-host example network: two DMZ entry hosts, database h7 as target."""
    hosts = [
        Host(hid, hid, asset, Leaf(Vulnerability.from_score(cve, score, impact, cost)))
        for hid, cve, score, impact, cost, asset in _TABLE6
    ]
    return NetworkModel.build(hosts, _FIREWALL, attacker="Internet", target="h7")

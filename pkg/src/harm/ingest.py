"""Reading and writing the JSON network-description format.

Document layout (schema_version "1")::

    {
      "schema_version": "1",
      "attacker": "Internet",
      "target": "h7",
      "hosts": [
        {"id": "h1", "name": "h1", "asset_value": 40.0,
         "vulnerabilities": {"cve": "CVE-2016-2386", "base_score": 7.5,
                             "prob": 0.75, "impact": 7.0, "cost": 8.0}},
        ...
      ],
      "edges": [["Internet", "h1"], ...]
    }

``vulnerabilities`` is one tree expression: either a leaf object as above
(``prob`` optional, defaulting to ``base_score / 10``) or a gate
``{"gate": "and" | "or", "children": [...]}``. Hosts may carry
``"patched": true``.
"""

from __future__ import annotations

import json
import math
import re
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import (
    DanglingEdgeError,
    DuplicateHostError,
    MissingFieldError,
    ModelValidationError,
    SpecFormatError,
    SpecSyntaxError,
    UnknownSchemaVersionError,
)
from .model import Gate, GateKind, Host, Leaf, NetworkModel, Vulnerability, validate_model

__all__ = [
    "SCHEMA_VERSION",
    "parse_network_spec",
    "serialize_network_spec",
    "load_network_spec",
    "fixture_text",
]

SCHEMA_VERSION = "1"


def _number(value: Any, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecFormatError(f"{what} must be a number, got {value!r}")
    return float(value)


def _string(value: Any, what: str) -> str:
    if not isinstance(value, str):
        raise SpecFormatError(f"{what} must be a string, got {value!r}")
    return value


def _require(obj: dict, key: str, where: str) -> Any:
    if key not in obj:
        raise MissingFieldError(key, where)
    return obj[key]


def _parse_tree(expr: Any, where: str):
    if not isinstance(expr, dict):
        raise SpecFormatError(f"tree expression in {where} must be an object")
    if "gate" in expr:
        kind = expr["gate"]
        if kind not in ("and", "or"):
            raise SpecFormatError(f"unknown gate {kind!r} in {where}")
        children = _require(expr, "children", where)
        if not isinstance(children, list):
            raise SpecFormatError(f"gate children in {where} must be a list")
        return Gate(GateKind(kind), tuple(_parse_tree(c, where) for c in children))
    prob = expr.get("prob")
    vuln = Vulnerability.from_score(
        _string(_require(expr, "cve", where), f"cve in {where}"),
        _number(_require(expr, "base_score", where), f"base_score in {where}"),
        _number(_require(expr, "impact", where), f"impact in {where}"),
        _number(_require(expr, "cost", where), f"cost in {where}"),
        prob=None if prob is None else _number(prob, f"prob in {where}"),
    )
    return Leaf(vuln)


def _reject_constant(token: str):
    raise ValueError(f"non-finite number {token} is not allowed")


def parse_network_spec(text: str | bytes) -> NetworkModel:
    """Parse and validate a network description document."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SpecSyntaxError(f"input is not UTF-8 ({exc.reason})", 1, exc.start + 1) from None
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise SpecSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    except ValueError as exc:
        raise SpecSyntaxError(str(exc), 1, 1) from None

    if not isinstance(doc, dict):
        raise SpecFormatError("document must be a JSON object")
    version = _require(doc, "schema_version", "document")
    if version != SCHEMA_VERSION:
        raise UnknownSchemaVersionError(f"unknown schema_version {version!r}")

    raw_hosts = doc.get("hosts", [])
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_hosts, list):
        raise SpecFormatError("hosts must be a list")
    if not isinstance(raw_edges, list):
        raise SpecFormatError("edges must be a list")
    if "target" not in doc:
        raise MissingFieldError("target")
    if "attacker" not in doc:
        raise MissingFieldError("attacker")
    attacker = _string(doc["attacker"], "attacker")
    target = _string(doc["target"], "target")

    hosts: list[Host] = []
    seen: set[str] = set()
    for i, rec in enumerate(raw_hosts):
        if not isinstance(rec, dict):
            raise SpecFormatError(f"host #{i + 1} must be an object")
        hid = _string(_require(rec, "id", f"host #{i + 1}"), "host id")
        if hid in seen:
            raise DuplicateHostError(hid)
        seen.add(hid)
        where = f"host {hid}"
        patched = rec.get("patched", False)
        if not isinstance(patched, bool):
            raise SpecFormatError(f"patched in {where} must be a boolean")
        hosts.append(Host(
            id=hid,
            name=_string(rec.get("name", hid), f"name in {where}"),
            asset_value=_number(_require(rec, "asset_value", where), f"asset_value in {where}"),
            attack_tree=_parse_tree(_require(rec, "vulnerabilities", where), where),
            patched=patched,
        ))

    nodes = seen | {attacker}
    edges = []
    for e in raw_edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise SpecFormatError(f"edge {e!r} must be a [src, dst] pair of strings")
        src, dst = e
        for end in (src, dst):
            if end not in nodes:
                raise DanglingEdgeError(src, dst, end)
        edges.append((src, dst))

    model = NetworkModel.build(hosts, edges, attacker=attacker, target=target)
    result = validate_model(model)
    if not result.ok:
        raise ModelValidationError(result.violations)
    return model


def load_network_spec(path: str | Path) -> NetworkModel:
    return parse_network_spec(Path(path).read_bytes())


def _num_out(x: float):
    # integral floats keep a trailing ".0"; json.dumps uses repr, which round-trips
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    return float(x)


def _tree_out(tree) -> dict:
    if isinstance(tree, Leaf):
        v = tree.vulnerability
        return {
            "cve": v.cve_id,
            "base_score": _num_out(v.base_score),
            "prob": _num_out(v.prob),
            "impact": _num_out(v.impact),
            "cost": _num_out(v.cost),
        }
    return {"gate": tree.kind.value, "children": [_tree_out(c) for c in tree.children]}


_STR = r'"(?:[^"\\]|\\.)*"'
# only edges are two-string arrays; keep each on one line
_PAIR = re.compile(r"\[\n\s+(" + _STR + r"),\n\s+(" + _STR + r")\n\s+\]")


def serialize_network_spec(model: NetworkModel) -> str:
    """Canonical text: hosts by id, edges sorted, fixed key order, explicit prob."""
    hosts = []
    for hid in sorted(model.hosts):
        h = model.hosts[hid]
        rec = {"id": h.id, "name": h.name, "asset_value": _num_out(h.asset_value)}
        if h.patched:
            rec["patched"] = True
        rec["vulnerabilities"] = _tree_out(h.attack_tree)
        hosts.append(rec)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "attacker": model.attacker_id,
        "target": model.target_id,
        "hosts": hosts,
        "edges": [list(e) for e in sorted(model.graph.edges)],
    }
    text = json.dumps(doc, indent=2, ensure_ascii=False, allow_nan=False)
    return _PAIR.sub(r"[\1, \2]", text) + "\n"


def fixture_text() -> str:
    """The bundled example-network document."""
    return resources.files("harm.data").joinpath("paper-network.json").read_text("utf-8")

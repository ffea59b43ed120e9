"""Metric reports: selection, taxonomy tags and text/JSON rendering."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from importlib import resources
from typing import Any, Callable, Sequence

from . import network_metrics as nm
from .errors import UsageError
from .host_metrics import host_metrics
from .model import NetworkModel, paper_example_model
from .paths import PathSet

__all__ = [
    "MetricDef",
    "MetricEntry",
    "MetricReport",
    "METRICS",
    "DEFAULT_METRICS",
    "parse_selection",
    "build_report",
    "render_report",
    "report_schema",
    "round_half_up",
]

HOST = "host-based"
NETWORK = "network-based"
WITH_PROB = "with-probability"
WITHOUT_PROB = "without-probability"
PATH = "path-based"
NON_PATH = "non-path-based"
COMPOSITE = "composite"


def round_half_up(value: float, places: int = 2) -> str:
    q = Decimal(1).scaleb(-places)
    return str(Decimal(repr(float(value))).quantize(q, rounding=ROUND_HALF_UP))


@dataclass
class _Context:
    model: NetworkModel
    paths: PathSet
    ncp_path: int | None
    _cache: dict = field(default_factory=dict)

    def once(self, key: str, fn: Callable[[], Any]) -> Any:
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def composite(self) -> nm.CompositeBundle:
        return self.once("composite", lambda: nm.composite_metrics(self.model, self.paths))

    def host_table(self):
        return self.once("hosts", lambda: {
            hid: host_metrics(self.model.hosts[hid]) for hid in sorted(self.model.hosts)
        })


@dataclass(frozen=True)
class MetricEntry:
    id: str
    name: str
    title: str
    tags: tuple
    value: float | int
    per_path: tuple | None = None
    per_host: tuple | None = None
    modal_set: tuple | None = None
    notes: tuple = ()


@dataclass(frozen=True)
class MetricDef:
    id: str
    name: str
    title: str
    tags: tuple
    compute: Callable[[_Context], dict]
    notes: tuple = ()


def _host_metric(attr: str):
    def compute(ctx: _Context) -> dict:
        table = ctx.host_table()
        return {
            "value": getattr(table[ctx.model.target_id], attr),
            "per_host": tuple((hid, getattr(m, attr)) for hid, m in table.items()),
        }
    return compute


def _composite(attr: str):
    def compute(ctx: _Context) -> dict:
        bundle = ctx.composite()
        return {
            "value": getattr(bundle, attr),
            "per_path": tuple((p.index, getattr(p, attr)) for p in bundle.per_path),
        }
    return compute


def _mode(ctx: _Context) -> dict:
    modal, rep = nm.mode_path_length(ctx.paths)
    return {"value": rep, "modal_set": tuple(sorted(modal))}


def _roa_complement(ctx: _Context) -> dict:
    values = nm.roa_complement_per_path(ctx.model, ctx.paths)
    return {
        "value": max(values),
        "per_path": tuple((ap.index, v) for ap, v in zip(ctx.paths, values)),
    }


def _ncp(ctx: _Context) -> dict:
    return {"value": nm.ncp(ctx.model, ctx.paths, ctx.ncp_path)}


_TARGET_NOTE = "value is the target host's; per-host values listed"

METRICS: tuple = (
    MetricDef("host-probability", "pr_h", "Probability of Host Compromise",
              (HOST, WITH_PROB), _host_metric("prob"), (_TARGET_NOTE,)),
    MetricDef("host-risk", "r_h", "Host Risk",
              (HOST, WITH_PROB), _host_metric("risk"), (_TARGET_NOTE,)),
    MetricDef("host-impact", "aim_h", "Attack Impact",
              (HOST, WITHOUT_PROB), _host_metric("impact"), (_TARGET_NOTE,)),
    MetricDef("host-cost", "ac_h", "Attack Cost",
              (HOST, WITHOUT_PROB), _host_metric("cost"),
              (_TARGET_NOTE, "gate rules: AND = sum, OR = min")),
    MetricDef("host-roa", "roa_h", "Return on Attack",
              (HOST, WITHOUT_PROB), _host_metric("roa"), (_TARGET_NOTE,)),
    MetricDef("shortest-path", "SP", "Shortest Attack Path",
              (NETWORK, PATH), lambda c: {"value": nm.shortest_path(c.paths)}),
    MetricDef("number-of-paths", "NP", "Number of Attack Paths",
              (NETWORK, PATH), lambda c: {"value": nm.number_of_paths(c.paths)}),
    MetricDef("mean-path-length", "MPL", "Mean of Attack Path Lengths",
              (NETWORK, PATH), lambda c: {"value": nm.mean_path_length(c.paths)}),
    MetricDef("normalized-mean-path-length", "NMPL", "Normalized Mean of Path Lengths",
              (NETWORK, PATH),
              lambda c: {"value": nm.normalized_mean_path_length(c.paths)},
              ("definition: MPL/NP",)),
    MetricDef("stddev-path-length", "SDPL", "Standard Deviation of Path Lengths",
              (NETWORK, PATH), lambda c: {"value": nm.stddev_path_length(c.paths)},
              ("population standard deviation (divisor NP)",)),
    MetricDef("mode-path-length", "MoPL", "Mode of Path Lengths",
              (NETWORK, PATH), _mode, ("ties: smallest modal length reported",)),
    MetricDef("median-path-length", "MePL", "Median of Path Lengths",
              (NETWORK, PATH), lambda c: {"value": nm.median_path_length(c.paths)},
              ("even count: mean of the two middle lengths",)),
    MetricDef("attack-resistance", "AR", "Attack Resistance",
              (NETWORK, PATH),
              lambda c: {"value": nm.attack_resistance(c.model, c.paths)},
              ("exploit resistance r(h) = folded CVSS base score; "
               "serial sum, parallel harmonic join",)),
    MetricDef("ncp", "NCP", "Network Compromise Percentage",
              (NETWORK, NON_PATH), _ncp,
              ("denominator: asset value of hosts on any attack path",)),
    MetricDef("vhp", "VHP", "Vulnerable Host Percentage",
              (NETWORK, NON_PATH), lambda c: {"value": nm.vhp(c.model, c.paths)}),
    MetricDef("composite-aim", "AIM", "Impact on Attack Paths",
              (NETWORK, PATH, COMPOSITE), _composite("aim")),
    MetricDef("composite-risk", "R", "Risk on Attack Paths",
              (NETWORK, PATH, COMPOSITE), _composite("risk")),
    MetricDef("composite-roa", "ROA", "Return on Attack Paths",
              (NETWORK, PATH, COMPOSITE), _composite("roa")),
    MetricDef("composite-pr", "Pr", "Probability of Attack Success on Paths",
              (NETWORK, PATH, COMPOSITE), _composite("pr")),
    MetricDef("composite-roa-complement", "ROA(1-pr)",
              "Return on Attack Paths, 1-pr Variant",
              (NETWORK, PATH, COMPOSITE), _roa_complement,
              ("cross-check only: substitutes 1 - pr_h for pr_h",)),
)

_BY_ID = {m.id: m for m in METRICS}
DEFAULT_METRICS = tuple(m.id for m in METRICS if m.id != "composite-roa-complement")
PATH_FREE = {"host-probability", "host-risk", "host-impact", "host-cost", "host-roa",
             "number-of-paths"}


def parse_selection(text: str | None) -> tuple:
    """Turn ``all`` / ``none`` / a comma-separated id list into ordered metric ids."""
    if text is None or text.strip() == "all":
        return DEFAULT_METRICS
    wanted = [t.strip() for t in text.split(",") if t.strip()]
    if wanted == ["none"]:
        return ()
    chosen = set()
    for t in wanted:
        if t == "all":
            chosen.update(DEFAULT_METRICS)
        elif t in _BY_ID:
            chosen.add(t)
        else:
            raise UsageError(f"unknown metric {t!r}")
    return tuple(m.id for m in METRICS if m.id in chosen)


@dataclass(frozen=True)
class MetricReport:
    meta: dict
    paths: tuple
    metrics: tuple
    deltas: tuple = ()


_DELTAS = (
    ("mean-path-length", "MPL: published 3.30; 10/3 = 3.33 (presentation rounding slip)"),
    ("ncp", "NCP: published 51.23%; 100 x 110 / 214.5 = 51.28%"),
    ("attack-resistance", "AR: published 8.81; the serial/parallel recursion gives 8.49"),
    ("composite-roa", "ROA: published per-path 1.91 / 1.12 / 1.30 use 1 - pr_h; "
                      "with pr_h as defined: 1.61 / 1.59 / 1.29"),
)


def build_report(model: NetworkModel, paths: PathSet, selection: Sequence[str] = DEFAULT_METRICS,
                 ncp_path: int | None = None, source: bytes | None = None,
                 source_name: str | None = None) -> MetricReport:
    ctx = _Context(model, paths, ncp_path)
    entries = []
    for mid in selection:
        d = _BY_ID[mid]
        out = d.compute(ctx)
        entries.append(MetricEntry(d.id, d.name, d.title, d.tags, out["value"],
                                   per_path=out.get("per_path"),
                                   per_host=out.get("per_host"),
                                   modal_set=out.get("modal_set"),
                                   notes=d.notes))
    meta = {
        "hosts": len(model.hosts),
        "edges": len(model.graph.edges),
        "attacker": model.attacker_id,
        "target": model.target_id,
    }
    if source is not None:
        meta["input"] = {"path": source_name, "sha256": hashlib.sha256(source).hexdigest()}
    listing = tuple((ap.index, ap.hosts, len(ap.hosts)) for ap in paths)
    deltas = ()
    if model == paper_example_model():
        ids = set(selection)
        deltas = tuple(text for mid, text in _DELTAS if mid in ids)
    return MetricReport(meta, listing, tuple(entries), deltas)


def _report_dict(report: MetricReport) -> dict:
    metrics = []
    for e in report.metrics:
        item: dict[str, Any] = {
            "id": e.id,
            "name": e.name,
            "title": e.title,
            "tags": list(e.tags),
            "value": e.value,
            "rendered": round_half_up(e.value),
        }
        if e.per_path is not None:
            item["per_path"] = [
                {"index": i, "value": v, "rendered": round_half_up(v)} for i, v in e.per_path
            ]
        if e.per_host is not None:
            item["per_host"] = [
                {"host": h, "value": v, "rendered": round_half_up(v)} for h, v in e.per_host
            ]
        if e.modal_set is not None:
            item["modal_set"] = list(e.modal_set)
        if e.notes:
            item["notes"] = list(e.notes)
        metrics.append(item)
    meta = dict(report.meta)
    if report.deltas:
        meta["published_deltas"] = list(report.deltas)
    return {
        "meta": meta,
        "paths": [{"index": i, "hosts": list(h), "length": n} for i, h, n in report.paths],
        "metrics": metrics,
    }


def _table(rows: list[list[str]], right: set[int] = frozenset()) -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for r in rows:
        cells = [c.rjust(w) if i in right else c.ljust(w) for i, (c, w) in enumerate(zip(r, widths))]
        lines.append("  ".join(cells).rstrip())
    return lines


def _render_text(report: MetricReport) -> str:
    m = report.meta
    out = [
        f"Model: {m['hosts']} hosts, {m['edges']} edges, "
        f"attacker {m['attacker']}, target {m['target']}",
    ]
    if "input" in m:
        out.append(f"Input: {m['input']['path']} (sha256 {m['input']['sha256']})")
    out.append("")
    out.append(f"Attack paths ({len(report.paths)})")
    if report.paths:
        rows = [["Index", "Hosts", "Length"]]
        rows += [[f"ap{i}", "(" + ",".join(h) + ")", str(n)] for i, h, n in report.paths]
        out += ["  " + line for line in _table(rows, right={2})]

    if report.metrics:
        out.append("")
        out.append("Metrics")
        rows = [["Metric", "Value", "Symbol", "Tags"]]
        footnotes: dict[str, int] = {}
        for e in report.metrics:
            marks = ""
            for note in e.notes:
                marks += f"[{footnotes.setdefault(note, len(footnotes) + 1)}]"
            rows.append([e.title, round_half_up(e.value), e.name + marks, ", ".join(e.tags)])
            if e.modal_set is not None:
                rows.append(["  modal set", "{" + ", ".join(map(str, e.modal_set)) + "}", "", ""])
            for i, v in e.per_path or ():
                rows.append([f"  ap{i}", round_half_up(v), "", ""])
            for h, v in e.per_host or ():
                rows.append([f"  {h}", round_half_up(v), "", ""])
        out += ["  " + line for line in _table(rows, right={1})]
        if footnotes:
            out.append("")
            out.append("Notes")
            out += [f"  [{k}] {note}" for note, k in footnotes.items()]

    if report.deltas:
        out.append("")
        out.append("Deltas from published example values")
        out += [f"  - {d}" for d in report.deltas]
    return "\n".join(out) + "\n"


def render_report(report: MetricReport, fmt: str = "text") -> str:
    """Text: aligned tables, 2-decimal values. JSON: full precision plus ``rendered``."""
    if fmt == "json":
        return json.dumps(_report_dict(report), indent=2, ensure_ascii=False) + "\n"
    if fmt == "text":
        return _render_text(report)
    raise UsageError(f"unknown format {fmt!r}")


def report_schema() -> dict:
    return json.loads(resources.files("harm").joinpath("report.schema.json").read_text("utf-8"))

"""Network-level metrics: path-based, non-path-based and composite."""

from __future__ import annotations

import math
import statistics
from collections import Counter
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter

from .errors import DegenerateResistanceError, UnreachableTargetError, UsageError
from .host_metrics import HostMetrics, fold_base_score, host_metrics
from .model import NetworkModel
from .paths import PathSet

__all__ = [
    "PathMetricsBundle",
    "PathComposite",
    "CompositeBundle",
    "NonPathBundle",
    "shortest_path",
    "number_of_paths",
    "mean_path_length",
    "normalized_mean_path_length",
    "stddev_path_length",
    "mode_path_length",
    "median_path_length",
    "attack_resistance",
    "composite_metrics",
    "roa_complement_per_path",
    "ncp",
    "vhp",
    "path_metrics",
    "non_path_metrics",
]


@dataclass(frozen=True)
class PathMetricsBundle:
    sp: int
    np: int
    mpl: float
    nmpl: float
    sdpl: float
    mopl: frozenset
    mopl_value: int
    mepl: float
    resistance: float


@dataclass(frozen=True)
class PathComposite:
    index: int
    aim: float
    risk: float
    roa: float
    pr: float


@dataclass(frozen=True)
class CompositeBundle:
    aim: float
    risk: float
    roa: float
    pr: float
    per_path: tuple


@dataclass(frozen=True)
class NonPathBundle:
    ncp: float
    vhp: float


def _lengths(paths: PathSet) -> list[int]:
    if len(paths) == 0:
        raise UnreachableTargetError()
    return paths.lengths()


def shortest_path(paths: PathSet) -> int:
    return min(_lengths(paths))


def number_of_paths(paths: PathSet) -> int:
    return len(paths)


def mean_path_length(paths: PathSet) -> float:
    lengths = _lengths(paths)
    return math.fsum(lengths) / len(lengths)


def normalized_mean_path_length(paths: PathSet) -> float:
    """Mean path length divided by the number of paths."""
    return mean_path_length(paths) / len(paths)


def stddev_path_length(paths: PathSet) -> float:
    # population form: divisor is the number of paths
    return statistics.pstdev(_lengths(paths))


def mode_path_length(paths: PathSet) -> tuple[frozenset, int]:
    """All most frequent lengths, plus the smallest of them as representative."""
    counts = Counter(_lengths(paths))
    top = max(counts.values())
    modal = frozenset(k for k, c in counts.items() if c == top)
    return modal, min(modal)


def median_path_length(paths: PathSet) -> float:
    return float(statistics.median(_lengths(paths)))


def attack_resistance(model: NetworkModel, paths: PathSet) -> float:
    """Cumulative resistance of the target over the path-restricted graph.

    Each host's own resistance is its folded CVSS base score. Serial
    (single-predecessor) steps add up; k >= 2 predecessors combine like
    parallel resistors before the host's own value is added. A host that
    the attacker reaches directly has no upstream resistance.
    """
    _lengths(paths)
    attacker = model.attacker_id
    preds: dict[str, set[str]] = {}
    for ap in paths:
        prev = attacker
        for h in ap.hosts:
            preds.setdefault(h, set()).add(prev)
            prev = h

    deps = {h: {p for p in ps if p != attacker} for h, ps in preds.items()}
    try:
        order = list(TopologicalSorter(deps).static_order())
    except CycleError as exc:
        raise DegenerateResistanceError(
            f"path-restricted graph has a cycle through {', '.join(exc.args[1])}"
        ) from None

    cumulative: dict[str, float] = {}
    for h in order:
        own = fold_base_score(model.hosts[h].attack_tree)
        ps = preds[h]
        if attacker in ps:
            cumulative[h] = own
        elif len(ps) == 1:
            (p,) = ps
            cumulative[h] = own + cumulative[p]
        else:
            upstream = [cumulative[p] for p in sorted(ps)]
            zero = [p for p, r in zip(sorted(ps), upstream) if r == 0]
            if zero:
                raise DegenerateResistanceError(
                    f"zero cumulative resistance at {', '.join(zero)} feeding {h}"
                )
            cumulative[h] = own + 1.0 / math.fsum(1.0 / r for r in upstream)
    return cumulative[model.target_id]


def _host_table(model: NetworkModel, paths: PathSet) -> dict[str, HostMetrics]:
    return {h: host_metrics(model.hosts[h]) for h in paths.hosts_on_paths()}


def composite_metrics(model: NetworkModel, paths: PathSet) -> CompositeBundle:
    """Impact, risk, return on attack and success probability per path, with maxima."""
    _lengths(paths)
    table = _host_table(model, paths)
    per_path = []
    for ap in paths:
        hm = [table[h] for h in ap.hosts]
        per_path.append(PathComposite(
            index=ap.index,
            aim=math.fsum(m.impact for m in hm),
            risk=math.fsum(m.prob * m.impact for m in hm),
            roa=math.fsum(m.prob * m.impact / m.cost for m in hm),
            pr=math.prod(m.prob for m in hm),
        ))
    return CompositeBundle(
        aim=max(p.aim for p in per_path),
        risk=max(p.risk for p in per_path),
        roa=max(p.roa for p in per_path),
        pr=max(p.pr for p in per_path),
        per_path=tuple(per_path),
    )


def roa_complement_per_path(model: NetworkModel, paths: PathSet) -> list[float]:
    """Return on attack per path with ``1 - pr_h`` in place of ``pr_h``.

    Cross-check variant only; :func:`composite_metrics` is the committed form.
    """
    _lengths(paths)
    table = _host_table(model, paths)
    return [
        math.fsum((1.0 - table[h].prob) * table[h].impact / table[h].cost for h in ap.hosts)
        for ap in paths
    ]


def ncp(model: NetworkModel, paths: PathSet, exploited_index: int) -> float:
    """Percentage of on-path asset value held by the hosts of one exploited path."""
    try:
        exploited = paths.by_index(exploited_index)
    except IndexError:
        raise UsageError(
            f"exploited path index {exploited_index} out of range 1..{len(paths)}"
        ) from None
    denom = math.fsum(model.hosts[h].asset_value for h in paths.hosts_on_paths())
    if denom == 0:
        return 0.0
    num = math.fsum(model.hosts[h].asset_value for h in exploited.hosts)
    return 100.0 * num / denom


def vhp(model: NetworkModel, paths: PathSet) -> float:
    """Percentage of on-path hosts that still carry an exploitable vulnerability."""
    _lengths(paths)
    on_path = paths.hosts_on_paths()
    vulnerable = [h for h in on_path if not model.hosts[h].patched]
    return 100.0 * len(vulnerable) / len(on_path)


def path_metrics(model: NetworkModel, paths: PathSet) -> PathMetricsBundle:
    modal, rep = mode_path_length(paths)
    return PathMetricsBundle(
        sp=shortest_path(paths),
        np=number_of_paths(paths),
        mpl=mean_path_length(paths),
        nmpl=normalized_mean_path_length(paths),
        sdpl=stddev_path_length(paths),
        mopl=modal,
        mopl_value=rep,
        mepl=median_path_length(paths),
        resistance=attack_resistance(model, paths),
    )


def non_path_metrics(model: NetworkModel, paths: PathSet, exploited_index: int) -> NonPathBundle:
    return NonPathBundle(ncp=ncp(model, paths, exploited_index), vhp=vhp(model, paths))

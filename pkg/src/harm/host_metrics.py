"""Folding a host's attack tree into scalar host-level metrics.

Gate rules per fold (leaf value in parentheses):

=========  ===============  ========  ==================
fold       leaf             AND       OR
=========  ===============  ========  ==================
impact     impact           sum       max
prob       prob             product   1 - prod(1 - p)
risk       prob*impact      sum       max
roa        prob*impact/cost sum       max
cost       cost             sum       min
=========  ===============  ========  ==================
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError
from .model import AttackTreeNode, GateKind, Host, Leaf, Vulnerability

__all__ = [
    "HostMetrics",
    "fold_impact",
    "fold_prob",
    "fold_risk",
    "fold_roa",
    "fold_cost",
    "fold_base_score",
    "host_metrics",
]


@dataclass(frozen=True)
class HostMetrics:
    prob: float
    impact: float
    risk: float
    roa: float
    cost: float


def _fold(tree: AttackTreeNode, leaf: Callable[[Vulnerability], float],
          and_: Callable[[list], float], or_: Callable[[list], float]) -> float:
    if isinstance(tree, Leaf):
        return leaf(tree.vulnerability)
    values = [_fold(c, leaf, and_, or_) for c in tree.children]
    if len(values) == 1:  # degenerate gate is its child, exactly
        return values[0]
    return and_(values) if tree.kind is GateKind.AND else or_(values)


def _noisy_or(values: list) -> float:
    # 1 - prod(1 - p), accurate when every p is tiny
    if any(p >= 1.0 for p in values):
        return 1.0
    return -math.expm1(math.fsum(math.log1p(-p) for p in values))


def fold_impact(tree: AttackTreeNode) -> float:
    return _fold(tree, lambda v: v.impact, math.fsum, max)


def fold_prob(tree: AttackTreeNode) -> float:
    return _fold(tree, lambda v: v.prob, math.prod, _noisy_or)


def fold_risk(tree: AttackTreeNode) -> float:
    return _fold(tree, lambda v: v.prob * v.impact, math.fsum, max)


def _leaf_roa(v: Vulnerability) -> float:
    if not v.cost > 0:
        raise DomainError(f"cost of {v.cve_id} must be positive, got {v.cost!r}")
    return v.prob * v.impact / v.cost


def fold_roa(tree: AttackTreeNode) -> float:
    """Return on attack; raises :class:`DomainError` on a leaf with cost <= 0."""
    return _fold(tree, _leaf_roa, math.fsum, max)


def fold_cost(tree: AttackTreeNode) -> float:
    # every conjunct must be paid for; the attacker picks the cheapest alternative
    return _fold(tree, lambda v: v.cost, math.fsum, min)


def fold_base_score(tree: AttackTreeNode) -> float:
    """Per-host exploit resistance: CVSS base scores folded like impact."""
    return _fold(tree, lambda v: v.base_score, math.fsum, max)


def host_metrics(host: Host) -> HostMetrics:
    tree = host.attack_tree
    if host.patched:
        return HostMetrics(prob=0.0, impact=0.0, risk=0.0, roa=0.0, cost=fold_cost(tree))
    return HostMetrics(
        prob=fold_prob(tree),
        impact=fold_impact(tree),
        risk=fold_risk(tree),
        roa=fold_roa(tree),
        cost=fold_cost(tree),
    )

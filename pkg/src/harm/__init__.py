"""Two-layer Hierarchical Attack Representation Model (HARM) security metrics.

Upper layer: host reachability graph with one attacker node. Lower layer:
per-host AND/OR attack trees over CVSS-scored vulnerabilities.
"""

from .errors import (
    DegenerateResistanceError,
    DomainError,
    HarmError,
    ModelValidationError,
    PathCapExceededError,
    UnreachableTargetError,
    UsageError,
)
from .host_metrics import (
    HostMetrics,
    fold_cost,
    fold_impact,
    fold_prob,
    fold_risk,
    fold_roa,
    host_metrics,
)
from .ingest import load_network_spec, parse_network_spec, serialize_network_spec
from .model import (
    AttackGraph,
    Gate,
    GateKind,
    Host,
    Leaf,
    NetworkModel,
    Vulnerability,
    paper_example_model,
    validate_model,
)
from .network_metrics import (
    attack_resistance,
    composite_metrics,
    mean_path_length,
    median_path_length,
    mode_path_length,
    ncp,
    normalized_mean_path_length,
    number_of_paths,
    shortest_path,
    stddev_path_length,
    vhp,
)
from .paths import BACKEND, AttackPath, PathSet, enumerate_paths, path_length

__version__ = "0.1.0"

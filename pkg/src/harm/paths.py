"""Attack-path enumeration over the upper (reachability) layer.

The DFS kernel is compiled with Cython when the extension is available and
falls back to :mod:`harm._pykernel` otherwise. Set ``HARM_PURE_PYTHON=1``
before import to force the fallback.
"""

from __future__ import annotations

import os
from array import array
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import ModelValidationError, PathCapExceededError
from .model import NetworkModel, validate_model

if os.environ.get("HARM_PURE_PYTHON"):
    from ._pykernel import simple_paths as _simple_paths
    BACKEND = "python"
else:
    try:
        from ._kernel import simple_paths as _simple_paths
        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._pykernel import simple_paths as _simple_paths
        BACKEND = "python"

DEFAULT_PATH_CAP = 1_000_000

__all__ = [
    "AttackPath",
    "PathSet",
    "enumerate_paths",
    "path_length",
    "to_csr",
    "BACKEND",
    "DEFAULT_PATH_CAP",
]


@dataclass(frozen=True)
class AttackPath:
    hosts: tuple
    index: int

    def __len__(self) -> int:
        return len(self.hosts)

    def __str__(self) -> str:
        return "(" + ",".join(self.hosts) + ")"


@dataclass(frozen=True)
class PathSet:
    paths: tuple = ()

    def __iter__(self) -> Iterator[AttackPath]:
        return iter(self.paths)

    def __len__(self) -> int:
        return len(self.paths)

    def __getitem__(self, i):
        return self.paths[i]

    def by_index(self, index: int) -> AttackPath:
        """Look up a path by its 1-based enumeration index."""
        if not 1 <= index <= len(self.paths):
            raise IndexError(index)
        return self.paths[index - 1]

    def lengths(self) -> list[int]:
        return [len(p.hosts) for p in self.paths]

    def hosts_on_paths(self) -> list[str]:
        """Hosts appearing on at least one path, in first-seen order."""
        return list(dict.fromkeys(h for p in self.paths for h in p.hosts))

    @classmethod
    def of(cls, sequences: Sequence[Sequence[str]]) -> "PathSet":
        return cls(tuple(AttackPath(tuple(s), i) for i, s in enumerate(sequences, 1)))


def to_csr(nodes: Sequence[str], edges) -> tuple[array, array]:
    """CSR adjacency with each row sorted by the neighbor's position in ``nodes``."""
    pos = {n: i for i, n in enumerate(nodes)}
    rows: list[list[int]] = [[] for _ in nodes]
    for src, dst in edges:
        rows[pos[src]].append(pos[dst])
    indptr = array("i", [0])
    indices = array("i")
    for row in rows:
        row.sort()
        indices.extend(row)
        indptr.append(len(indices))
    return indptr, indices


def enumerate_paths(model: NetworkModel, cap: int | None = None) -> PathSet:
    """All simple attacker-to-target paths, depth-first, successors in id order.

    The attacker node is dropped from each path. Raises
    :class:`PathCapExceededError` once more than ``cap`` paths exist.
    """
    result = validate_model(model)
    if not result.ok:
        raise ModelValidationError(result.violations)
    if cap is None:
        cap = DEFAULT_PATH_CAP
    if cap < 0:
        raise ValueError("path cap must be non-negative")

    nodes = sorted(model.graph.nodes)
    indptr, indices = to_csr(nodes, model.graph.edges)
    source = nodes.index(model.attacker_id)
    target = nodes.index(model.target_id)
    raw = _simple_paths(indptr, indices, source, target, cap)
    if raw is None:
        raise PathCapExceededError(cap)
    return PathSet.of([[nodes[i] for i in seq[1:]] for seq in raw])


def path_length(ap: AttackPath) -> int:
    """Number of hosts on the path."""
    return len(ap.hosts)

"""Pure-Python simple-path enumeration; fallback for the compiled kernel."""

from __future__ import annotations

from typing import Sequence


def simple_paths(indptr: Sequence[int], indices: Sequence[int], source: int, target: int,
                 cap: int):
    n = len(indptr) - 1
    if n <= 0 or not (0 <= source < n) or not (0 <= target < n):
        return []
    if source == target:
        return [(source,)]

    out = []
    path = [source]
    cursor = [indptr[source]]
    on_path = [False] * n
    on_path[source] = True
    while path:
        node = path[-1]
        pos = cursor[-1]
        if pos >= indptr[node + 1]:
            on_path[node] = False
            path.pop()
            cursor.pop()
            continue
        nxt = indices[pos]
        cursor[-1] = pos + 1
        if on_path[nxt]:
            continue
        if nxt == target:
            if len(out) >= cap:
                return None
            out.append((*path, nxt))
            continue
        path.append(nxt)
        cursor.append(indptr[nxt])
        on_path[nxt] = True
    return out

"""Compare the compiled and pure-Python path-enumeration kernels.

Usage: python benchmarks/bench_paths.py [--layers N] [--width W] [--repeat R]

The graph is a layered DAG (every node links to every node of the next
layer) plus a few back edges, so the simple-path count is width ** layers.
"""

import argparse
import random
import statistics
import sys
import time

from harm import _pykernel
from harm.paths import to_csr

try:
    from harm import _kernel
except ImportError:
    _kernel = None


def layered_graph(layers, width, back_edges, seed=0):
    rng = random.Random(seed)
    nodes = ["src"] + [f"L{i}_{j}" for i in range(layers) for j in range(width)] + ["dst"]
    edges = [("src", f"L0_{j}") for j in range(width)]
    for i in range(layers - 1):
        edges += [(f"L{i}_{a}", f"L{i + 1}_{b}") for a in range(width) for b in range(width)]
    edges += [(f"L{layers - 1}_{j}", "dst") for j in range(width)]
    for _ in range(back_edges):
        i = rng.randrange(1, layers)
        edges.append((f"L{i}_{rng.randrange(width)}", f"L{i - 1}_{rng.randrange(width)}"))
    return nodes, sorted(set(edges))


def bench(fn, indptr, indices, s, t, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        paths = fn(indptr, indices, s, t, 10**9)
        times.append(time.perf_counter() - start)
    return len(paths), statistics.median(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--layers", type=int, default=6)
    ap.add_argument("--width", type=int, default=6)
    ap.add_argument("--back-edges", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    nodes, edges = layered_graph(args.layers, args.width, args.back_edges)
    indptr, indices = to_csr(nodes, edges)
    s, t = nodes.index("src"), nodes.index("dst")
    print(f"graph: {len(nodes)} nodes, {len(edges)} edges")

    n_py, t_py = bench(_pykernel.simple_paths, indptr, indices, s, t, args.repeat)
    print(f"python : {n_py:>10} paths  {t_py * 1e3:10.1f} ms")
    if _kernel is None:
        print("cython : extension not built")
        return 0
    n_cy, t_cy = bench(_kernel.simple_paths, indptr, indices, s, t, args.repeat)
    print(f"cython : {n_cy:>10} paths  {t_cy * 1e3:10.1f} ms")
    if n_cy != n_py:
        print("path counts differ", file=sys.stderr)
        return 1
    print(f"speedup: {t_py / t_cy:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

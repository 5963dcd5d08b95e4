"""Benchmark: compiled enumeration kernels vs the pure-Python fallback.

Builds equilateral ring graphs with two halflines per vertex (every vertex
balanced, so the orbit structure is rich), then times the full pseudo-orbit
condition on each backend.

Usage: python benchmarks/bench_kernels.py [max_ring_size]
"""

import sys
import time
from fractions import Fraction

from qgraph import EdgeSpec, MetricGraph, VertexSpec, assemble_system, condition_for_graph, enumerate_cycles
from qgraph import kernels


def ring_graph(n: int) -> MetricGraph:
    vertices = [VertexSpec(id=i, n_halflines=2) for i in range(1, n + 1)]
    edges = [
        EdgeSpec(id=i, u=i, v=i % n + 1, length=Fraction(1)) for i in range(1, n + 1)
    ]
    return MetricGraph(vertices, edges)


def time_backend(system, backend: str, repeats: int) -> tuple[float, object]:
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = condition_for_graph(system, backend=backend, cap=50_000_000)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> int:
    # the number of disjoint cycle subsets grows like 2^n on rings, so the
    # last rows are squarely in the enumeration-bound regime
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 16
    backends = kernels.available_backends()
    if "compiled" not in backends:
        print("note: compiled extension not built; timing the pure kernels only")
    print(f"{'ring':>4} {'bonds':>5} {'cycles':>7} " + " ".join(f"{b:>12}" for b in backends) + "  speedup")
    for n in range(4, max_n + 1, 2):
        system = assemble_system(ring_graph(n))
        n_cycles = len(enumerate_cycles(system, cap=50_000_000))
        times = {}
        reference = None
        for backend in backends:
            elapsed, cond = time_backend(system, backend, repeats=3 if n < 12 else 1)
            times[backend] = elapsed
            if reference is None:
                reference = cond
            elif cond != reference:
                raise SystemExit(f"backend results differ on ring {n}")
        cells = " ".join(f"{times[b] * 1000:10.2f}ms" for b in backends)
        if "compiled" in times and times["compiled"] > 0:
            speedup = f"{times['pure'] / times['compiled']:8.1f}x"
        else:
            speedup = "       -"
        print(f"{n:>4} {system.n_bonds:>5} {n_cycles:>7} {cells} {speedup}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Shared test utilities: reference graphs, independent oracles, generators.

The oracles here deliberately avoid the library's enumeration engine so
that golden values are confirmed by an unrelated code path: closed bond
sequences by exhaustive permutation, disjoint subsets by itertools, cycle
covers by a permanent, reference matrices frozen by hand.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from pathlib import Path

from qgraph import (
    Coupling,
    EdgeSpec,
    MetricGraph,
    VertexSpec,
    load_graph,
    validate,
)

GRAPH_DIR = Path(__file__).resolve().parent.parent / "graphs"

F = Fraction


def reference_graph(name: str) -> MetricGraph:
    return load_graph(GRAPH_DIR / f"{name}.json")


REFERENCE_NAMES = ("two_segments", "triangle", "square")


# frozen reference matrices (bond order b_1..b_N, b_1r..b_Nr)

S_TWO_SEGMENTS = [
    [F(0), F(0), F(-1), F(0)],
    [F(1, 2), F(0), F(0), F(-1, 2)],
    [F(-1, 2), F(0), F(0), F(1, 2)],
    [F(0), F(-1), F(0), F(0)],
]

S_TRIANGLE = [
    [F(0), F(0), F(1, 2), F(-1, 2), F(0), F(0)],
    [F(1, 2), F(0), F(0), F(0), F(-1, 2), F(0)],
    [F(0), F(1, 2), F(0), F(0), F(0), F(-1, 2)],
    [F(-1, 2), F(0), F(0), F(0), F(1, 2), F(0)],
    [F(0), F(-1, 2), F(0), F(0), F(0), F(1, 2)],
    [F(0), F(0), F(-1, 2), F(1, 2), F(0), F(0)],
]

S_SQUARE = [
    [F(0), F(0), F(0), F(1, 2), F(-1, 2), F(0), F(0), F(0)],
    [F(1, 2), F(0), F(0), F(0), F(0), F(-1, 2), F(0), F(0)],
    [F(0), F(1, 2), F(0), F(0), F(0), F(0), F(-1, 2), F(0)],
    [F(0), F(0), F(1, 2), F(0), F(0), F(0), F(0), F(-1, 2)],
    [F(-1, 2), F(0), F(0), F(0), F(0), F(1, 2), F(0), F(0)],
    [F(0), F(-1, 2), F(0), F(0), F(0), F(0), F(1, 2), F(0)],
    [F(0), F(0), F(-1, 2), F(0), F(0), F(0), F(0), F(1, 2)],
    [F(0), F(0), F(0), F(-1, 2), F(1, 2), F(0), F(0), F(0)],
]

REFERENCE_S = {
    "two_segments": S_TWO_SEGMENTS,
    "triangle": S_TRIANGLE,
    "square": S_SQUARE,
}


def brute_force_cycles(succ: list[list[int]]) -> set[tuple[int, ...]]:
    """Every closed bond sequence without repetition, canonically rotated.

    Exhaustive search over permutations; only usable for small digraphs.
    """
    n = len(succ)
    arcs = {(u, v) for u, targets in enumerate(succ) for v in targets}
    out: set[tuple[int, ...]] = set()
    for r in range(1, n + 1):
        for perm in itertools.permutations(range(n), r):
            if all((perm[i], perm[(i + 1) % r]) in arcs for i in range(r)):
                pivot = perm.index(min(perm))
                out.add(perm[pivot:] + perm[:pivot])
    return out


def brute_force_disjoint_subsets(masks: list[int]) -> set[tuple[int, ...]]:
    out: set[tuple[int, ...]] = set()
    n = len(masks)
    for r in range(n + 1):
        for combo in itertools.combinations(range(n), r):
            union = 0
            ok = True
            for i in combo:
                if masks[i] & union:
                    ok = False
                    break
                union |= masks[i]
            if ok:
                out.add(combo)
    return out


def count_cycle_covers(succ: list[list[int]], n: int) -> int:
    """Number of spanning disjoint cycle collections = permanent of the
    adjacency matrix (row u, column v marks the arc u -> v)."""
    adj = [[0] * n for _ in range(n)]
    for u, targets in enumerate(succ):
        for v in targets:
            adj[u][v] = 1
    counts = {0: 1}
    for row in range(n):
        nxt: dict[int, int] = {}
        for mask, ways in counts.items():
            for v in range(n):
                if adj[row][v] and not mask & (1 << v):
                    key = mask | (1 << v)
                    nxt[key] = nxt.get(key, 0) + ways
        counts = nxt
    return counts.get((1 << n) - 1, 0)


LENGTH_POOL = [F(1), F(1, 2), F(1, 3), F(2, 3), F(3, 2), F(2), F(5, 4)]


def random_graph(
    rng: random.Random,
    *,
    max_edges: int = 5,
    equilateral: bool = False,
    simple: bool = True,
    allow_dirichlet: bool = True,
    require_balanced: bool = False,
) -> MetricGraph:
    """Random valid connected graph with mixed balanced/unbalanced vertices."""
    while True:
        n_vertices = rng.randint(2, max(2, max_edges))
        edges: list[tuple[int, int]] = []
        for v in range(2, n_vertices + 1):
            edges.append((rng.randint(1, v - 1), v))
        pairs = {(min(e), max(e)) for e in edges}
        while len(edges) < max_edges and rng.random() < 0.5:
            u = rng.randint(1, n_vertices)
            v = rng.randint(1, n_vertices)
            if u == v:
                continue
            if simple and (min(u, v), max(u, v)) in pairs:
                continue
            edges.append((u, v))
            pairs.add((min(u, v), max(u, v)))
        if equilateral:
            ell = rng.choice(LENGTH_POOL)
            lengths = [ell] * len(edges)
        else:
            lengths = [rng.choice(LENGTH_POOL) for _ in edges]

        degree = {v: 0 for v in range(1, n_vertices + 1)}
        for u, v in edges:
            degree[u] += 1
            degree[v] += 1

        vertices = []
        for v in range(1, n_vertices + 1):
            roll = rng.random()
            if allow_dirichlet and degree[v] == 1 and roll < 0.25:
                vertices.append(VertexSpec(id=v, coupling=Coupling.DIRICHLET))
            elif roll < 0.6:
                vertices.append(
                    VertexSpec(id=v, coupling=Coupling.STANDARD, n_halflines=degree[v])
                )
            else:
                halflines = rng.choice([0, 1, 2, 3])
                if halflines == degree[v]:
                    halflines += 1
                vertices.append(
                    VertexSpec(id=v, coupling=Coupling.STANDARD, n_halflines=halflines)
                )
        edge_specs = [
            EdgeSpec(id=i + 1, u=u, v=v, length=l)
            for i, ((u, v), l) in enumerate(zip(edges, lengths))
        ]
        graph = MetricGraph(vertices, edge_specs)
        if not validate(graph).ok:
            continue
        if require_balanced and not graph.balanced_vertices():
            continue
        return graph

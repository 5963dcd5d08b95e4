"""Metric graphs with attached halflines, and their directed-bond doubling.

A metric graph is a finite set of vertices joined by internal edges of
positive length; any vertex may additionally carry halflines (semi-infinite
leads). Vertex couplings are restricted to two kinds:

* ``standard``  -- function values continuous, outgoing derivatives sum to 0;
* ``dirichlet`` -- the function vanishes; only allowed at pendant vertices
  of internal degree 1 with no halflines.

The directed double of the compact part replaces every internal edge by two
oppositely oriented bonds of the same length. Bonds are indexed
``0 .. 2N-1``: bond ``e`` runs from edge e's tail to its head, bond ``e+N``
is its reversal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from .errors import GraphValidationError

Length = Union[Fraction, float]


class Coupling(str, Enum):
    STANDARD = "standard"
    DIRICHLET = "dirichlet"


@dataclass(frozen=True)
class VertexSpec:
    id: int
    coupling: Coupling = Coupling.STANDARD
    n_halflines: int = 0


@dataclass(frozen=True)
class EdgeSpec:
    """Internal edge from vertex ``u`` to vertex ``v`` (the orientation that
    the forward bond inherits)."""

    id: int
    u: int
    v: int
    length: Length = Fraction(1)


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...]

    @property
    def ok(self) -> bool:
        return not self.issues

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "; ".join(str(i) for i in self.issues)


class MetricGraph:
    """Immutable after construction; all derived data is precomputed."""

    def __init__(self, vertices, edges, *, allow_loops: bool = False):
        self.vertices: tuple[VertexSpec, ...] = tuple(vertices)
        self.edges: tuple[EdgeSpec, ...] = tuple(edges)
        self.allow_loops = allow_loops
        self._by_id = {v.id: v for v in self.vertices}
        self._internal_degree: dict[int, int] = {v.id: 0 for v in self.vertices}
        for e in self.edges:
            if e.u in self._internal_degree:
                self._internal_degree[e.u] += 1
            if e.v in self._internal_degree:
                self._internal_degree[e.v] += 1

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_halflines(self) -> int:
        return sum(v.n_halflines for v in self.vertices)

    @property
    def vol(self) -> Length:
        return sum(e.length for e in self.edges)

    def vertex(self, vertex_id: int) -> VertexSpec:
        try:
            return self._by_id[vertex_id]
        except KeyError:
            raise KeyError(f"unknown vertex id {vertex_id}") from None

    def internal_degree(self, vertex_id: int) -> int:
        self.vertex(vertex_id)
        return self._internal_degree[vertex_id]

    def is_balanced(self, vertex_id: int) -> bool:
        """True iff the vertex has as many halflines as internal edge ends."""
        v = self.vertex(vertex_id)
        return self._internal_degree[vertex_id] == v.n_halflines

    def balanced_vertices(self) -> list[int]:
        return [v.id for v in self.vertices if self.is_balanced(v.id)]

    @property
    def has_exact_lengths(self) -> bool:
        return all(isinstance(e.length, Fraction) for e in self.edges)

    @property
    def is_equilateral(self) -> bool:
        lengths = {e.length for e in self.edges}
        return len(lengths) == 1

    @property
    def edge_length(self) -> Length:
        """The common edge length; only meaningful for equilateral graphs."""
        if not self.is_equilateral:
            raise ValueError("graph is not equilateral")
        return self.edges[0].length

    def __repr__(self) -> str:
        return (
            f"MetricGraph({len(self.vertices)} vertices, {self.n_edges} edges, "
            f"{self.n_halflines} halflines)"
        )


def is_balanced(graph: MetricGraph, vertex_id: int) -> bool:
    return graph.is_balanced(vertex_id)


def validate(graph: MetricGraph) -> ValidationReport:
    """Collect every invariant violation; an empty report means valid."""
    issues: list[ValidationIssue] = []

    seen_v: set[int] = set()
    for v in graph.vertices:
        if v.id in seen_v:
            issues.append(ValidationIssue("duplicate_vertex", f"duplicate vertex id {v.id}"))
        seen_v.add(v.id)
        if v.n_halflines < 0:
            issues.append(
                ValidationIssue("negative_halflines", f"vertex {v.id}: negative halfline count")
            )

    seen_e: set[int] = set()
    pairs: set[tuple[int, int]] = set()
    for e in graph.edges:
        if e.id in seen_e:
            issues.append(ValidationIssue("duplicate_edge", f"duplicate edge id {e.id}"))
        seen_e.add(e.id)
        for end in (e.u, e.v):
            if end not in graph._by_id:
                issues.append(
                    ValidationIssue("unknown_vertex", f"edge {e.id}: unknown vertex {end}")
                )
        if not (e.length > 0) or (isinstance(e.length, float) and e.length != e.length):
            issues.append(
                ValidationIssue("nonpositive_length", f"edge {e.id}: nonpositive length")
            )
        if e.u == e.v and not graph.allow_loops:
            issues.append(
                ValidationIssue("loop_disabled", f"edge {e.id}: loop edges are disabled")
            )
        pairs.add((min(e.u, e.v), max(e.u, e.v)))

    if graph.n_edges == 0:
        issues.append(ValidationIssue("no_edges", "graph has no internal edge (vol = 0)"))

    for v in graph.vertices:
        deg = graph._internal_degree[v.id]
        if v.coupling is Coupling.DIRICHLET:
            if deg != 1 or v.n_halflines != 0:
                issues.append(
                    ValidationIssue(
                        "dirichlet_degree",
                        f"vertex {v.id}: Dirichlet degree != 1 "
                        f"(internal {deg}, halflines {v.n_halflines})",
                    )
                )
        else:
            if deg < 1:
                issues.append(
                    ValidationIssue(
                        "isolated_vertex",
                        f"vertex {v.id}: standard vertex with no internal edge",
                    )
                )

    # connectivity of the compact part
    if graph.vertices and graph.edges and not issues_contain(issues, "unknown_vertex"):
        adj: dict[int, set[int]] = {v.id: set() for v in graph.vertices}
        for e in graph.edges:
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
        start = graph.vertices[0].id
        seen = {start}
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(graph.vertices):
            issues.append(
                ValidationIssue("disconnected", "compact part of the graph is not connected")
            )

    return ValidationReport(tuple(issues))


def issues_contain(issues: list[ValidationIssue], code: str) -> bool:
    return any(i.code == code for i in issues)


def require_valid(graph: MetricGraph) -> None:
    report = validate(graph)
    if not report.ok:
        raise GraphValidationError(report)


class BondDigraph:
    """Directed double of the compact part: 2N bonds, reversal pairing.

    Bond indices follow the edge list: bond ``e`` (0 <= e < N) runs
    ``edges[e].u -> edges[e].v``; bond ``e + N`` is its reversal.
    """

    def __init__(self, graph: MetricGraph):
        require_valid(graph)
        self.graph = graph
        n = graph.n_edges
        self.n_bonds = 2 * n
        self._origin = [0] * self.n_bonds
        self._terminus = [0] * self.n_bonds
        self._length: list[Length] = [Fraction(0)] * self.n_bonds
        for i, e in enumerate(graph.edges):
            self._origin[i], self._terminus[i] = e.u, e.v
            self._origin[i + n], self._terminus[i + n] = e.v, e.u
            self._length[i] = self._length[i + n] = e.length

    def reversal(self, bond: int) -> int:
        n = self.n_bonds // 2
        return bond - n if bond >= n else bond + n

    def origin(self, bond: int) -> int:
        return self._origin[bond]

    def terminus(self, bond: int) -> int:
        return self._terminus[bond]

    def length(self, bond: int) -> Length:
        return self._length[bond]

    def edge_index(self, bond: int) -> int:
        n = self.n_bonds // 2
        return bond if bond < n else bond - n

    def label(self, bond: int) -> str:
        n = self.n_bonds // 2
        e = self.graph.edges[self.edge_index(bond)]
        return f"b{e.id}" if bond < n else f"b{e.id}r"

    def incoming(self, vertex_id: int) -> list[int]:
        return [b for b in range(self.n_bonds) if self._terminus[b] == vertex_id]

    def outgoing(self, vertex_id: int) -> list[int]:
        return [b for b in range(self.n_bonds) if self._origin[b] == vertex_id]

    def __repr__(self) -> str:
        return f"BondDigraph({self.n_bonds} bonds)"


def build_bond_digraph(graph: MetricGraph) -> BondDigraph:
    return BondDigraph(graph)


# -- JSON interchange --------------------------------------------------------
#
# {"vertices": [{"id", "coupling": "standard"|"dirichlet", "halflines"}],
#  "edges":    [{"id", "from", "to", "length": "1" | "3/2" | 1.5}],
#  "allow_loops": false}          (optional)
#
# Lengths given as strings parse to exact rationals ("3/2", "1.5" -> 3/2).
# Integral numbers are exact; non-integral numbers stay floating point and
# route the graph to the numerical-only paths.


def parse_length(raw) -> Length:
    if isinstance(raw, bool):
        raise ValueError(f"invalid length {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, float):
        return Fraction(int(raw)) if raw.is_integer() else raw
    if isinstance(raw, str):
        return Fraction(raw.strip())
    raise ValueError(f"invalid length {raw!r}")


def format_length(value: Length) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return repr(value)


def graph_from_dict(data: dict) -> MetricGraph:
    if not isinstance(data, dict):
        raise ValueError("graph document must be a JSON object")
    vertices = []
    for raw in data.get("vertices", []):
        vertices.append(
            VertexSpec(
                id=int(raw["id"]),
                coupling=Coupling(str(raw.get("coupling", "standard")).lower()),
                n_halflines=int(raw.get("halflines", 0)),
            )
        )
    edges = []
    for raw in data.get("edges", []):
        edges.append(
            EdgeSpec(
                id=int(raw["id"]),
                u=int(raw["from"]),
                v=int(raw["to"]),
                length=parse_length(raw.get("length", 1)),
            )
        )
    return MetricGraph(vertices, edges, allow_loops=bool(data.get("allow_loops", False)))


def graph_to_dict(graph: MetricGraph) -> dict:
    data = {
        "vertices": [
            {"id": v.id, "coupling": v.coupling.value, "halflines": v.n_halflines}
            for v in graph.vertices
        ],
        "edges": [
            {"id": e.id, "from": e.u, "to": e.v, "length": format_length(e.length)}
            for e in graph.edges
        ],
    }
    if graph.allow_loops:
        data["allow_loops"] = True
    return data


def load_graph(path) -> MetricGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_dict(json.load(fh))

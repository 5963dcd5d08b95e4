"""Periodic orbits, irreducible pseudo orbits and the orbit-sum condition.

Bonds form a weighted digraph: an arc runs from bond b to bond b' exactly
when the scattering entry S[b', b] is nonzero, i.e. when b ends where b'
starts and the hop amplitude does not vanish. Periodic orbits are the
simple directed cycles of that digraph; an irreducible pseudo orbit is a
set of pairwise bond-disjoint cycles. Summing (-1)^(number of cycles) times
the product of hop amplitudes times e^(ik * total length) over all
irreducible pseudo orbits (the empty one contributing +1) gives the
resonance condition; it coincides with det(I - e^(ikL) S) expanded over
disjoint cycle collections.

Edge deletion at balanced vertices: deleting a bond d that ends at a
balanced standard vertex turns node d into a zero-length "ghost". Hops into
the ghost keep the amplitude toward d with the sign flipped; the ghost then
continues with unit amplitude into any other bond ending at d's terminus.
A pseudo orbit can pass through each ghost at most once (it is still one
node of the digraph). The reduced orbit sum is identical to the unreduced
one, term by term.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from . import kernels
from .condition import ExponentialPolynomial
from .errors import GhostReductionError, IncommensurableLengthsError
from .graphs import BondDigraph, Coupling, Length, MetricGraph
from .scattering import ScatteringSystem, assemble_system

DEFAULT_ORBIT_CAP = 10**6


def resolve_orbit_cap(cap: int | None = None) -> int:
    """Explicit cap, else QGRAPH_ORBIT_CAP, else the default of 10**6."""
    if cap is not None:
        return int(cap)
    env = os.environ.get("QGRAPH_ORBIT_CAP")
    if env:
        return int(env)
    return DEFAULT_ORBIT_CAP


@dataclass(frozen=True)
class ArcGraph:
    """Weighted bond-hop digraph driving the enumeration.

    Nodes are bond indices (ghost nodes reuse the index of the bond they
    replace). ``weight[(u, v)]`` is the hop amplitude u -> v; ``succ`` holds
    sorted successor lists; ``node_length[u]`` the length a traversal of u
    adds (0 for ghosts).
    """

    n_nodes: int
    succ: tuple[tuple[int, ...], ...]
    weight: dict[tuple[int, int], Fraction]
    node_length: tuple[Length, ...]
    ghost_nodes: frozenset[int] = frozenset()


def arc_graph_from_system(system: ScatteringSystem) -> ArcGraph:
    nb = system.n_bonds
    succ: list[list[int]] = [[] for _ in range(nb)]
    weight: dict[tuple[int, int], Fraction] = {}
    for r in range(nb):
        for c in range(nb):
            w = system.S[r][c]
            if w:
                succ[c].append(r)
                weight[(c, r)] = w
    return ArcGraph(
        n_nodes=nb,
        succ=tuple(tuple(sorted(s)) for s in succ),
        weight=weight,
        node_length=system.lengths,
    )


@dataclass(frozen=True)
class DirectedCycle:
    """A periodic orbit: cyclically ordered bonds, smallest bond first."""

    bonds: tuple[int, ...]
    amplitude: Fraction
    length: Length

    @property
    def n_bonds(self) -> int:
        return len(self.bonds)


@dataclass(frozen=True)
class IrreduciblePseudoOrbit:
    cycles: tuple[DirectedCycle, ...]

    @property
    def m(self) -> int:
        return len(self.cycles)

    @property
    def total_amplitude(self) -> Fraction:
        return prod((c.amplitude for c in self.cycles), start=Fraction(1))

    @property
    def total_length(self) -> Length:
        return sum((c.length for c in self.cycles), Fraction(0))

    @property
    def sign_weight(self) -> Fraction:
        return (-1) ** self.m * self.total_amplitude

    @property
    def n_bonds(self) -> int:
        return sum(c.n_bonds for c in self.cycles)

    def bond_set(self) -> frozenset[int]:
        return frozenset(b for c in self.cycles for b in c.bonds)


@dataclass(frozen=True)
class GhostSpec:
    deleted_bond: int
    vertex_id: int  # balanced vertex the deleted bond ended at
    continuations: tuple[int, ...]


@dataclass(frozen=True)
class GhostReducedDigraph:
    """Bond digraph after deleting one incoming bond per selected vertex."""

    system: ScatteringSystem
    base: BondDigraph
    deletions: dict[int, int]  # vertex id -> deleted bond
    ghosts: tuple[GhostSpec, ...]
    arcs: ArcGraph

    @property
    def ghost_nodes(self) -> frozenset[int]:
        return self.arcs.ghost_nodes


def _arc_graph(source) -> ArcGraph:
    if isinstance(source, ArcGraph):
        return source
    if isinstance(source, GhostReducedDigraph):
        return source.arcs
    if isinstance(source, ScatteringSystem):
        return arc_graph_from_system(source)
    if isinstance(source, MetricGraph):
        return arc_graph_from_system(assemble_system(source))
    raise TypeError(f"cannot enumerate orbits on {type(source).__name__}")


def _cycle_from_nodes(arcs: ArcGraph, nodes: tuple[int, ...]) -> DirectedCycle:
    amp = Fraction(1)
    for i, u in enumerate(nodes):
        v = nodes[(i + 1) % len(nodes)]
        amp *= arcs.weight[(u, v)]
    length = sum((arcs.node_length[u] for u in nodes), Fraction(0))
    return DirectedCycle(bonds=nodes, amplitude=amp, length=length)


def enumerate_cycles(source, *, cap: int | None = None, backend: str | None = None) -> list[DirectedCycle]:
    """All periodic orbits of the bond digraph, each once, canonically rotated.

    ``source`` may be a MetricGraph, ScatteringSystem, GhostReducedDigraph
    or raw ArcGraph. Orbits through zero scattering entries do not exist by
    construction (such arcs are absent). Ordered by smallest bond, then
    number of bonds, then lexicographically.
    """
    arcs = _arc_graph(source)
    cap = resolve_orbit_cap(cap)
    raw = kernels.simple_cycles([list(s) for s in arcs.succ], cap, backend)
    cycles = [_cycle_from_nodes(arcs, nodes) for nodes in raw]
    cycles.sort(key=lambda c: (c.bonds[0], len(c.bonds), c.bonds))
    return cycles


def enumerate_irreducible_pseudo_orbits(
    cycles: list[DirectedCycle],
    *,
    cap: int | None = None,
    backend: str | None = None,
) -> list[IrreduciblePseudoOrbit]:
    """All bond-disjoint subsets of the given cycles, empty subset included.

    Ghost bonds take part in the disjointness test like any other bond, so
    each ghost appears at most once across a pseudo orbit.
    """
    cap = resolve_orbit_cap(cap)
    masks = [_mask(c.bonds) for c in cycles]
    subsets = kernels.disjoint_subsets(masks, cap, backend)
    return [
        IrreduciblePseudoOrbit(cycles=tuple(cycles[i] for i in idx)) for idx in subsets
    ]


def _mask(bonds: tuple[int, ...]) -> int:
    m = 0
    for b in bonds:
        m |= 1 << b
    return m


def resonance_condition(orbits: list[IrreduciblePseudoOrbit]) -> ExponentialPolynomial:
    """Orbit sum as an exponential polynomial with exact coefficients."""
    terms: dict[Fraction, Fraction] = {}
    for orbit in orbits:
        length = orbit.total_length
        if not isinstance(length, Fraction):
            raise IncommensurableLengthsError(
                "orbit lengths are not exact rationals; the exponential-polynomial "
                "form is unavailable (use the determinant evaluation instead)"
            )
        terms[length] = terms.get(length, Fraction(0)) + orbit.sign_weight
    return ExponentialPolynomial(terms)


def condition_for_graph(
    source,
    *,
    cap: int | None = None,
    backend: str | None = None,
) -> ExponentialPolynomial:
    """Resonance condition without materializing pseudo orbits.

    Same result as ``resonance_condition(enumerate_irreducible_pseudo_orbits(
    enumerate_cycles(source)))``, computed by the streaming kernel.
    """
    arcs = _arc_graph(source)
    if not all(isinstance(l, Fraction) for l in arcs.node_length):
        raise IncommensurableLengthsError(
            "edge lengths are not exact rationals; the exponential-polynomial "
            "form is unavailable (use the determinant evaluation instead)"
        )
    cap = resolve_orbit_cap(cap)
    cycles = enumerate_cycles(arcs, cap=cap, backend=backend)
    masks = [_mask(c.bonds) for c in cycles]
    lengths = [c.length for c in cycles]
    amplitudes = [c.amplitude for c in cycles]
    terms = kernels.accumulate_condition(masks, lengths, amplitudes, cap, backend)
    return ExponentialPolynomial(terms)


def orbit_size_histogram(
    orbits: list[IrreduciblePseudoOrbit],
    ghost_nodes: frozenset[int] = frozenset(),
) -> dict[int, int]:
    """Orbit counts keyed by the number of non-ghost bonds used."""
    hist: dict[int, int] = {}
    for orbit in orbits:
        n = sum(1 for b in orbit.bond_set() if b not in ghost_nodes)
        hist[n] = hist.get(n, 0) + 1
    return hist


# -- edge deletion at balanced vertices --------------------------------------


def _check_reduction_hypotheses(graph: MetricGraph, deletions: dict[int, int], bonds: BondDigraph) -> None:
    if not graph.is_equilateral:
        raise GhostReductionError("edge deletion requires an equilateral graph")
    if any(e.u == e.v for e in graph.edges):
        raise GhostReductionError(
            "edge deletion requires that no edge starts and ends in one vertex"
        )
    pairs = [(min(e.u, e.v), max(e.u, e.v)) for e in graph.edges]
    if len(pairs) != len(set(pairs)):
        raise GhostReductionError(
            "edge deletion requires that no two vertices are connected by more than one edge"
        )
    if not deletions:
        raise GhostReductionError("no deletions requested")
    for vertex_id, bond in deletions.items():
        try:
            v = graph.vertex(vertex_id)
        except KeyError:
            raise GhostReductionError(f"unknown vertex id {vertex_id}") from None
        if v.coupling is not Coupling.STANDARD:
            raise GhostReductionError(f"vertex {vertex_id} does not have standard coupling")
        if not graph.is_balanced(vertex_id):
            raise GhostReductionError(f"vertex {vertex_id} is not balanced")
        if not 0 <= bond < bonds.n_bonds:
            raise GhostReductionError(f"bond {bond} does not exist")
        if bonds.terminus(bond) != vertex_id:
            raise GhostReductionError(
                f"bond {bond} does not end at vertex {vertex_id}"
            )
    deleted = list(deletions.values())
    if len(deleted) != len(set(deleted)):
        raise GhostReductionError("a bond was deleted at two vertices")


def ghost_reduce(
    graph: MetricGraph,
    bonds: BondDigraph | None = None,
    deletions: dict[int, int] | None = None,
    *,
    system: ScatteringSystem | None = None,
) -> GhostReducedDigraph:
    """Delete one incoming bond per selected balanced vertex.

    ``deletions`` maps vertex ids to the incoming bond to delete there
    (default: ``default_deletions``). The deleted bond's node becomes a
    zero-length ghost: hops into it come from bonds ending at its origin,
    with the amplitude toward the deleted bond sign-flipped; it continues
    with unit amplitude into each other bond ending at the selected vertex.
    Because ghosts stay single nodes, no pseudo orbit can use one twice, and
    a ghost can never continue into another deleted bond (each deleted bond
    ends at its own selected vertex).
    """
    if system is None:
        system = assemble_system(graph, bonds)
    bonds = system.bonds
    if deletions is None:
        deletions = default_deletions(graph, bonds)
    _check_reduction_hypotheses(graph, deletions, bonds)

    nb = bonds.n_bonds
    deleted = {bond: vertex for vertex, bond in deletions.items()}
    ghost_ids = frozenset(deleted)

    succ: list[list[int]] = [[] for _ in range(nb)]
    weight: dict[tuple[int, int], Fraction] = {}
    # surviving hops between real bonds
    for r in range(nb):
        if r in ghost_ids:
            continue
        for c in range(nb):
            if c in ghost_ids:
                continue
            w = system.S[r][c]
            if w:
                succ[c].append(r)
                weight[(c, r)] = w
    ghosts = []
    for vertex_id in sorted(deletions):
        dbond = deletions[vertex_id]
        # hops into the ghost: sign-flipped amplitude toward the deleted bond
        for c in range(nb):
            if c in ghost_ids:
                continue
            w = system.S[dbond][c]
            if w:
                succ[c].append(dbond)
                weight[(c, dbond)] = -w
        # unit-amplitude continuations into the other bonds ending here
        continuations = tuple(
            b for b in bonds.incoming(vertex_id) if b != dbond
        )
        for b in continuations:
            if b in ghost_ids:  # unreachable; ghosts end at other vertices
                raise GhostReductionError(
                    f"continuation bond {b} of deleted bond {dbond} was itself deleted"
                )
            succ[dbond].append(b)
            weight[(dbond, b)] = Fraction(1)
        ghosts.append(
            GhostSpec(deleted_bond=dbond, vertex_id=vertex_id, continuations=continuations)
        )

    node_length = [
        Fraction(0) if i in ghost_ids else bonds.length(i) for i in range(nb)
    ]
    arcs = ArcGraph(
        n_nodes=nb,
        succ=tuple(tuple(sorted(s)) for s in succ),
        weight=weight,
        node_length=tuple(node_length),
        ghost_nodes=ghost_ids,
    )
    return GhostReducedDigraph(
        system=system,
        base=bonds,
        deletions=dict(sorted(deletions.items())),
        ghosts=tuple(ghosts),
        arcs=arcs,
    )


def default_deletions(graph: MetricGraph, bonds: BondDigraph) -> dict[int, int]:
    """One deleted incoming bond per balanced vertex.

    Prefers the reversed bond of the lowest-id edge pointing away from the
    vertex; if every incident edge points in, takes the forward bond of the
    lowest-id edge instead.
    """
    out: dict[int, int] = {}
    for vertex_id in graph.balanced_vertices():
        incoming = bonds.incoming(vertex_id)
        n = bonds.n_bonds // 2
        reversed_bonds = [b for b in incoming if b >= n]
        pool = reversed_bonds if reversed_bonds else incoming
        out[vertex_id] = min(pool, key=lambda b: graph.edges[bonds.edge_index(b)].id)
    return out

"""Vertex scattering matrices and the global bond scattering system.

The effective vertex-scattering matrix of a standard vertex with n internal
edge ends and m halflines maps incoming internal amplitudes to outgoing
ones after the halfline amplitudes are eliminated through the coupling
conditions: (2/(n+m)) J_n - I_n, where J is the all-ones matrix. A Dirichlet
pendant reflects with -1. For these couplings the matrices carry no energy
dependence.

The global 2N x 2N matrix S is assembled on the bond basis
(b_1 .. b_N, b_1r .. b_Nr): the column of a bond c ending at vertex v holds,
in the rows of the bonds leaving v, the entries of that vertex's scattering
matrix; the row of the reversal of c gets the diagonal (back-scattering)
entry, the other rows leaving v get off-diagonal entries, everything else
is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import ratlinalg
from .errors import CapabilityError, InternalConsistencyError
from .graphs import (
    BondDigraph,
    Coupling,
    Length,
    MetricGraph,
    build_bond_digraph,
    require_valid,
)

#: A floating eigenvalue below this magnitude must correspond to an exact
#: zero of S; any mismatch with the exact count raises.
NUMERICAL_ZERO = 1e-9


@dataclass(frozen=True)
class VertexScatteringMatrix:
    vertex_id: int
    entries: tuple[tuple[Fraction, ...], ...]
    ordering: tuple[int, ...]  # incoming bond ids indexing rows/columns

    @property
    def size(self) -> int:
        return len(self.entries)


def effective_vertex_scattering(n: int, m: int) -> list[list[Fraction]]:
    """(2/(n+m)) J_n - I_n for a standard vertex; n >= 1, m >= 0."""
    if n < 1:
        raise ValueError("a vertex on the compact part needs n >= 1 internal edge ends")
    if m < 0:
        raise ValueError("halfline count must be nonnegative")
    off = Fraction(2, n + m)
    return [[off - (1 if i == j else 0) for j in range(n)] for i in range(n)]


def dirichlet_vertex_scattering() -> list[list[Fraction]]:
    return [[Fraction(-1)]]


def vertex_scattering_by_elimination(n: int, m: int) -> list[list[Fraction]]:
    """Independent route to the standard-coupling vertex matrix.

    Solves the coupling conditions directly for each incoming basis vector:
    all boundary values agree (continuity), and the outgoing derivatives of
    the n internal waves and m halfline waves sum to zero. Unknowns are the
    n outgoing amplitudes and the m halfline amplitudes.
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1, m >= 0")
    size = n + m
    cols: list[list[Fraction]] = []
    for basis in range(n):
        a_in = [Fraction(1 if i == basis else 0) for i in range(n)]
        rows: list[list[Fraction]] = []
        rhs: list[Fraction] = []
        # out_j + in_j = out_0 + in_0  for j = 1..n-1
        for j in range(1, n):
            row = [Fraction(0)] * size
            row[0] = Fraction(1)
            row[j] = Fraction(-1)
            rows.append(row)
            rhs.append(a_in[j] - a_in[0])
        # beta_s = out_0 + in_0  for s = 1..m
        for s in range(m):
            row = [Fraction(0)] * size
            row[0] = Fraction(-1)
            row[n + s] = Fraction(1)
            rows.append(row)
            rhs.append(a_in[0])
        # sum_j (out_j - in_j) + sum_s beta_s = 0
        row = [Fraction(1)] * n + [Fraction(1)] * m
        rows.append(row)
        rhs.append(sum(a_in, Fraction(0)))
        sol = ratlinalg.solve(rows, rhs)
        cols.append(sol[:n])
    return [[cols[j][i] for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class ScatteringSystem:
    """Assembled global matrices on the bond basis.

    ``S`` is the bond scattering matrix, ``Q`` the bond-reversal permutation,
    ``sigma_tilde = Q S`` the block-diagonalizable vertex form, and
    ``lengths`` the diagonal of the length matrix (each edge length twice).
    """

    graph: MetricGraph
    bonds: BondDigraph
    S: tuple[tuple[Fraction, ...], ...]
    sigma_tilde: tuple[tuple[Fraction, ...], ...]
    lengths: tuple[Length, ...]
    vertex_matrices: tuple[VertexScatteringMatrix, ...]

    @property
    def n_bonds(self) -> int:
        return len(self.S)

    def s_entry(self, row: int, col: int) -> Fraction:
        return self.S[row][col]

    def q_matrix(self) -> list[list[Fraction]]:
        n = self.n_bonds
        q = ratlinalg.zeros(n)
        for i in range(n):
            q[i][self.bonds.reversal(i)] = Fraction(1)
        return q

    def s_matrix(self) -> list[list[Fraction]]:
        return [list(row) for row in self.S]

    def length_diagonal_float(self) -> np.ndarray:
        return np.array([float(x) for x in self.lengths], dtype=float)


def _vertex_matrix(graph: MetricGraph, bonds: BondDigraph, vertex_id: int) -> VertexScatteringMatrix:
    v = graph.vertex(vertex_id)
    inc = tuple(bonds.incoming(vertex_id))
    if v.coupling is Coupling.DIRICHLET:
        entries = dirichlet_vertex_scattering()
    else:
        entries = effective_vertex_scattering(len(inc), v.n_halflines)
    return VertexScatteringMatrix(
        vertex_id=vertex_id,
        entries=tuple(tuple(row) for row in entries),
        ordering=inc,
    )


def assemble_system(graph: MetricGraph, bonds: BondDigraph | None = None) -> ScatteringSystem:
    """Build S, sigma_tilde and the length diagonal for a valid graph."""
    require_valid(graph)
    if bonds is None:
        bonds = build_bond_digraph(graph)
    nb = bonds.n_bonds
    s = ratlinalg.zeros(nb)
    vertex_matrices = []
    for v in graph.vertices:
        vm = _vertex_matrix(graph, bonds, v.id)
        vertex_matrices.append(vm)
        inc = vm.ordering
        for ci, c in enumerate(inc):
            for ri, r_incoming in enumerate(inc):
                # the row bond leaves v; it is the reversal of an incoming bond
                s[bonds.reversal(r_incoming)][c] = vm.entries[ri][ci]
    q = ratlinalg.zeros(nb)
    for i in range(nb):
        q[i][bonds.reversal(i)] = Fraction(1)
    sigma = ratlinalg.mat_mul(q, s)
    return ScatteringSystem(
        graph=graph,
        bonds=bonds,
        S=tuple(tuple(row) for row in s),
        sigma_tilde=tuple(tuple(row) for row in sigma),
        lengths=tuple(bonds.length(i) for i in range(nb)),
        vertex_matrices=tuple(vertex_matrices),
    )


def vertex_grouped_permutation(system: ScatteringSystem) -> list[int]:
    """Bond order that groups incoming bonds vertex by vertex.

    Conjugating sigma_tilde by this permutation gives a block-diagonal
    matrix whose blocks are the vertex scattering matrices.
    """
    order: list[int] = []
    for vm in system.vertex_matrices:
        order.extend(vm.ordering)
    return order


def eigenvalues_of_s(system: ScatteringSystem) -> list[complex]:
    """All 2N eigenvalues of S with algebraic multiplicity.

    The multiplicity of 0 is decided exactly over the rationals (rank of a
    high power of S, cross-checked against the trailing zeros of the exact
    characteristic polynomial); only the count of the remaining nonzero
    eigenvalues is certified, their values come from floating-point
    eigendecomposition. S need not be diagonalizable: a defective zero
    eigenvalue smears into floating values of order eps^(1/m), which is why
    zeros are never classified numerically. A genuinely nonzero eigenvalue
    that floats below the numerical-zero threshold raises
    InternalConsistencyError instead of being silently misclassified.
    """
    s_rows = [list(row) for row in system.S]
    mult0 = ratlinalg.zero_eigenvalue_multiplicity(s_rows)
    trailing = _charpoly_zero_multiplicity(s_rows)
    if trailing != mult0:
        raise InternalConsistencyError(
            f"zero eigenvalue count mismatch: rank of powers gives {mult0}, "
            f"characteristic polynomial gives {trailing}"
        )
    vals = np.linalg.eigvals(np.array([[float(x) for x in row] for row in system.S]))
    order = np.argsort(np.abs(vals))
    nonzero = [complex(vals[i]) for i in order[mult0:]]
    if any(abs(z) < NUMERICAL_ZERO for z in nonzero):
        raise InternalConsistencyError(
            f"an exactly nonzero eigenvalue fell below {NUMERICAL_ZERO} numerically"
        )
    nonzero.sort(key=lambda z: (round(z.real, 12), round(z.imag, 12)))
    return [0j] * mult0 + nonzero


def _charpoly_zero_multiplicity(s_rows) -> int:
    coeffs = ratlinalg.charpoly(s_rows)
    n = len(s_rows)
    trailing = 0
    for j in range(n, 0, -1):
        if coeffs[j] == 0:
            trailing += 1
        else:
            break
    return trailing


@dataclass(frozen=True)
class EffectiveSizeResult:
    n_nonzero: int
    effective_size: Length  # W
    vol: Length
    is_weyl: bool
    eigenvalues: tuple[complex, ...]
    edge_length: Length

    @property
    def W(self) -> Length:
        return self.effective_size


def effective_size(system: ScatteringSystem, graph: MetricGraph | None = None) -> EffectiveSizeResult:
    """Effective size of an equilateral graph: (edge length / 2) times the
    number of nonzero eigenvalues of S.

    Rejects non-equilateral graphs; for those, take the degree of the
    resonance-condition polynomial instead (see the solver module).
    """
    graph = graph or system.graph
    if not graph.is_equilateral:
        raise CapabilityError(
            "effective size from eigenvalues needs an equilateral graph; "
            "use the resonance-condition degree route instead"
        )
    eigenvalues = eigenvalues_of_s(system)
    n_nonzero = sum(1 for z in eigenvalues if z != 0)
    ell = graph.edge_length
    if isinstance(ell, Fraction):
        w: Length = ell * n_nonzero / 2
    else:
        w = ell * n_nonzero / 2.0
    vol = graph.vol
    return EffectiveSizeResult(
        n_nonzero=n_nonzero,
        effective_size=w,
        vol=vol,
        is_weyl=(w == vol),
        eigenvalues=tuple(eigenvalues),
        edge_length=ell,
    )


@dataclass(frozen=True)
class WeylClassification:
    is_weyl: bool
    balanced_vertices: tuple[int, ...]

    @property
    def kind(self) -> str:
        return "weyl" if self.is_weyl else "non_weyl"


def classify_weyl(graph: MetricGraph) -> WeylClassification:
    """Weyl vs non-Weyl resonance asymptotics.

    The counting function grows like (2/pi) W R; W falls short of the total
    internal length exactly when some vertex carries as many halflines as
    internal edge ends. The witnesses are all such balanced vertices.
    """
    require_valid(graph)
    balanced = tuple(graph.balanced_vertices())
    return WeylClassification(is_weyl=not balanced, balanced_vertices=balanced)

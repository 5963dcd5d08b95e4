"""Vertex matrices, global assembly, eigenvalues and classification."""

import random
from fractions import Fraction

import numpy as np
import pytest
from helpers import REFERENCE_NAMES, REFERENCE_S, random_graph, reference_graph

from qgraph import (
    CapabilityError,
    EdgeSpec,
    MetricGraph,
    VertexSpec,
    assemble_system,
    classify_weyl,
    effective_size,
    effective_vertex_scattering,
    eigenvalues_of_s,
    vertex_scattering_by_elimination,
)
from qgraph import ratlinalg
from qgraph.scattering import vertex_grouped_permutation

F = Fraction


def test_vertex_matrix_balanced_two_two():
    assert effective_vertex_scattering(2, 2) == [
        [F(-1, 2), F(1, 2)],
        [F(1, 2), F(-1, 2)],
    ]


def test_vertex_matrix_dirichlet_pendant():
    g = reference_graph("two_segments")
    system = assemble_system(g)
    pendants = [vm for vm in system.vertex_matrices if vm.vertex_id in (1, 3)]
    assert len(pendants) == 2
    for vm in pendants:
        assert vm.entries == ((F(-1),),)


def test_vertex_matrix_three_zero_row_sums():
    mat = effective_vertex_scattering(3, 0)
    assert all(sum(row) == 1 for row in mat)
    assert mat[0][1] == F(2, 3) and mat[0][0] == F(-1, 3)


def test_vertex_matrix_rejects_degree_zero():
    with pytest.raises(ValueError):
        effective_vertex_scattering(0, 3)


def test_balanced_vertex_rows_sum_to_zero():
    for n in range(1, 7):
        mat = effective_vertex_scattering(n, n)
        assert all(sum(row) == 0 for row in mat)


def test_elimination_oracle_matches_closed_form():
    rng = random.Random(42)
    for _ in range(25):
        n, m = rng.randint(1, 6), rng.randint(0, 6)
        assert vertex_scattering_by_elimination(n, m) == effective_vertex_scattering(n, m)


def test_unitarity_exactly_when_no_halflines():
    for n in range(1, 6):
        for m in range(0, 4):
            mat = effective_vertex_scattering(n, m)
            gram = ratlinalg.mat_mul(ratlinalg.transpose(mat), mat)
            unitary = ratlinalg.mat_equal(gram, ratlinalg.identity(n))
            assert unitary == (m == 0)
            # amplitude never amplifies: operator norm at most 1
            norm = np.linalg.norm(np.array(mat, dtype=float), ord=2)
            assert norm <= 1 + 1e-12


@pytest.mark.parametrize("name", REFERENCE_NAMES)
def test_reference_matrices_entry_for_entry(name):
    system = assemble_system(reference_graph(name))
    assert [list(row) for row in system.S] == REFERENCE_S[name]


def test_column_filling_rule_random():
    rng = random.Random(5)
    for _ in range(20):
        g = random_graph(rng, max_edges=5, simple=False)
        system = assemble_system(g)
        b = system.bonds
        for r in range(b.n_bonds):
            for c in range(b.n_bonds):
                if system.S[r][c] != 0:
                    assert b.terminus(c) == b.origin(r)


def test_sigma_tilde_block_structure():
    rng = random.Random(6)
    graphs = [reference_graph(n) for n in REFERENCE_NAMES]
    graphs += [random_graph(rng, max_edges=5) for _ in range(10)]
    for g in graphs:
        system = assemble_system(g)
        perm = vertex_grouped_permutation(system)
        grouped = [[system.sigma_tilde[i][j] for j in perm] for i in perm]
        offset = 0
        for vm in system.vertex_matrices:
            size = vm.size
            for i in range(size):
                for j in range(size):
                    assert grouped[offset + i][offset + j] == vm.entries[i][j]
            # everything outside the blocks is zero
            for j in range(len(perm)):
                if not offset <= j < offset + size:
                    for i in range(size):
                        assert grouped[offset + i][j] == 0
            offset += size


def test_q_squared_identity_and_s_factorization():
    system = assemble_system(reference_graph("triangle"))
    q = system.q_matrix()
    assert ratlinalg.mat_equal(ratlinalg.mat_mul(q, q), ratlinalg.identity(6))
    s_again = ratlinalg.mat_mul(q, [list(r) for r in system.sigma_tilde])
    assert ratlinalg.mat_equal(s_again, system.s_matrix())


def test_length_diagonal_pairs():
    g = MetricGraph(
        [VertexSpec(1), VertexSpec(2), VertexSpec(3)],
        [EdgeSpec(1, 1, 2, F(1, 2)), EdgeSpec(2, 2, 3, F(3, 2))],
    )
    system = assemble_system(g)
    assert list(system.lengths) == [F(1, 2), F(3, 2), F(1, 2), F(3, 2)]


EXPECTED_EIGENVALUES = {
    "two_segments": {0: 2, -1: 1, 1: 1},
    "triangle": {0: 3, F(-1, 2): 2, 1: 1},
    "square": {0: 6, -1: 1, 1: 1},
}


@pytest.mark.parametrize("name", REFERENCE_NAMES)
def test_reference_eigenvalues(name):
    values = eigenvalues_of_s(assemble_system(reference_graph(name)))
    expected = EXPECTED_EIGENVALUES[name]
    assert len(values) == sum(expected.values())
    zero_count = sum(1 for z in values if z == 0)
    assert zero_count == expected[0]
    remaining = [z for z in values if z != 0]
    for target, mult in expected.items():
        if target == 0:
            continue
        hits = [z for z in remaining if abs(z - float(target)) < 1e-10]
        assert len(hits) == mult, f"eigenvalue {target} multiplicity"


EXPECTED_SIZES = {
    "two_segments": (2, F(1), F(2)),
    "triangle": (3, F(3, 2), F(3)),
    "square": (2, F(1), F(4)),
}


@pytest.mark.parametrize("name", REFERENCE_NAMES)
def test_reference_effective_sizes(name):
    g = reference_graph(name)
    result = effective_size(assemble_system(g), g)
    n_nonzero, w, vol = EXPECTED_SIZES[name]
    assert result.n_nonzero == n_nonzero
    assert result.effective_size == w
    assert result.vol == vol
    assert not result.is_weyl


def test_effective_size_rejects_non_equilateral():
    g = MetricGraph(
        [VertexSpec(1), VertexSpec(2), VertexSpec(3)],
        [EdgeSpec(1, 1, 2, F(1)), EdgeSpec(2, 2, 3, F(2))],
    )
    with pytest.raises(CapabilityError):
        effective_size(assemble_system(g), g)


def test_classify_reference_witnesses():
    assert classify_weyl(reference_graph("two_segments")).balanced_vertices == (2,)
    assert classify_weyl(reference_graph("square")).balanced_vertices == (1, 2, 3, 4)
    for name in REFERENCE_NAMES:
        assert not classify_weyl(reference_graph(name)).is_weyl


def test_classify_single_edge_with_unequal_halflines():
    # endpoint A: 1 internal + 1 halfline -> balanced, so the graph is non-Weyl
    g = MetricGraph(
        [VertexSpec(1, n_halflines=1), VertexSpec(2, n_halflines=2)],
        [EdgeSpec(1, 1, 2)],
    )
    cls = classify_weyl(g)
    assert not cls.is_weyl
    assert cls.balanced_vertices == (1,)


def test_classify_weyl_when_no_vertex_balanced():
    g = MetricGraph(
        [VertexSpec(1, n_halflines=2), VertexSpec(2)],
        [EdgeSpec(1, 1, 2)],
    )
    cls = classify_weyl(g)
    assert cls.is_weyl and cls.balanced_vertices == ()


def test_weyl_iff_no_balanced_vertex_consistency():
    rng = random.Random(77)
    for _ in range(25):
        g = random_graph(rng, max_edges=5)
        if not g.is_equilateral:
            continue
        cls = classify_weyl(g)
        result = effective_size(assemble_system(g), g)
        assert cls.is_weyl == result.is_weyl
        assert result.effective_size <= result.vol
        assert result.effective_size >= 0

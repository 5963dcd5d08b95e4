"""Resonances of non-compact quantum graphs.

Compute resonance conditions for metric graphs with attached halflines by
two independent routes (bond-scattering determinant and pseudo-orbit
expansion), classify Weyl vs non-Weyl counting asymptotics, and locate the
complex resonance lattice.
"""

from .condition import ExponentialPolynomial
from .errors import (
    CapabilityError,
    GhostReductionError,
    GraphValidationError,
    IncommensurableLengthsError,
    InternalConsistencyError,
    OrbitCapExceededError,
    QGraphError,
    TrivialConditionError,
)
from .graphs import (
    BondDigraph,
    Coupling,
    EdgeSpec,
    MetricGraph,
    ValidationIssue,
    ValidationReport,
    VertexSpec,
    build_bond_digraph,
    graph_from_dict,
    graph_to_dict,
    is_balanced,
    load_graph,
    validate,
)
from .orbits import (
    DirectedCycle,
    GhostReducedDigraph,
    IrreduciblePseudoOrbit,
    condition_for_graph,
    default_deletions,
    enumerate_cycles,
    enumerate_irreducible_pseudo_orbits,
    ghost_reduce,
    orbit_size_histogram,
    resonance_condition,
)
from .scattering import (
    EffectiveSizeResult,
    ScatteringSystem,
    VertexScatteringMatrix,
    WeylClassification,
    assemble_system,
    classify_weyl,
    effective_size,
    effective_vertex_scattering,
    eigenvalues_of_s,
    vertex_scattering_by_elimination,
)
from .solver import (
    CountingEstimate,
    PolynomialReduction,
    ResonanceFamily,
    ResonancePoint,
    contour_counting_estimate,
    count_resonances,
    count_zeros_in_disc,
    determinant_condition,
    edge_length_quantum,
    evaluate_condition,
    find_roots,
    reduce_to_polynomial,
    resonance_points,
)

__version__ = "0.1.0"

__all__ = [
    "BondDigraph",
    "CapabilityError",
    "CountingEstimate",
    "Coupling",
    "DirectedCycle",
    "EdgeSpec",
    "EffectiveSizeResult",
    "ExponentialPolynomial",
    "GhostReducedDigraph",
    "GhostReductionError",
    "GraphValidationError",
    "IncommensurableLengthsError",
    "InternalConsistencyError",
    "IrreduciblePseudoOrbit",
    "MetricGraph",
    "OrbitCapExceededError",
    "PolynomialReduction",
    "QGraphError",
    "ResonanceFamily",
    "ResonancePoint",
    "ScatteringSystem",
    "TrivialConditionError",
    "ValidationIssue",
    "ValidationReport",
    "VertexScatteringMatrix",
    "VertexSpec",
    "WeylClassification",
    "assemble_system",
    "build_bond_digraph",
    "classify_weyl",
    "condition_for_graph",
    "contour_counting_estimate",
    "count_resonances",
    "count_zeros_in_disc",
    "default_deletions",
    "determinant_condition",
    "edge_length_quantum",
    "effective_size",
    "effective_vertex_scattering",
    "eigenvalues_of_s",
    "enumerate_cycles",
    "enumerate_irreducible_pseudo_orbits",
    "evaluate_condition",
    "find_roots",
    "ghost_reduce",
    "graph_from_dict",
    "graph_to_dict",
    "is_balanced",
    "load_graph",
    "orbit_size_histogram",
    "reduce_to_polynomial",
    "resonance_condition",
    "resonance_points",
    "validate",
    "vertex_scattering_by_elimination",
]

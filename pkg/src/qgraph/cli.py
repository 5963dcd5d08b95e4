"""Command-line front end.

Subcommands cover the full pipeline: validate, condition, orbits, reduce,
effective-size, classify, resonances, count, evaluate. Results go to
standard output (JSON or CSV), diagnostics to standard error. Exit codes:
0 success, 2 invalid input (malformed JSON, graph violations, bad
arguments), 3 capability limits (incommensurable lengths in polynomial
mode, orbit cap exceeded, non-equilateral eigenvalue route).

Output is deterministic: identical input and flags produce byte-identical
output. Rationals are serialized as strings like "-3/4" to keep them exact.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import orbits as orbits_mod
from . import solver
from .condition import ExponentialPolynomial
from .errors import (
    CapabilityError,
    GhostReductionError,
    GraphValidationError,
    QGraphError,
    TrivialConditionError,
)
from .graphs import MetricGraph, format_length, graph_from_dict, validate
from .scattering import assemble_system, classify_weyl, effective_size

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAPABILITY = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgraph",
        description=(
            "Resonance conditions, effective size and resonance counting for "
            "metric graphs with attached halflines."
        ),
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="cap on internal worker parallelism (current kernels are "
        "single-threaded; values >= 1 accepted)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="graph JSON file")
        return p

    add("validate", "check the graph file against all structural invariants")

    p = add("condition", "resonance condition from the pseudo-orbit expansion")
    p.add_argument("--orbit-cap", type=int, default=None, help="pseudo-orbit cap (default 10^6; env QGRAPH_ORBIT_CAP)")

    p = add("orbits", "list all irreducible pseudo orbits")
    p.add_argument("--orbit-cap", type=int, default=None)

    p = add("reduce", "delete one incoming bond per balanced vertex and re-expand")
    p.add_argument(
        "--delete",
        action="append",
        default=[],
        metavar="VERTEX:BOND",
        help="delete BOND (index) at balanced vertex VERTEX; repeatable. "
        "Default: reversed bond of the lowest-id outgoing edge per balanced vertex",
    )
    p.add_argument("--orbit-cap", type=int, default=None)

    add("effective-size", "effective size from the nonzero eigenvalues (equilateral only)")
    add("classify", "Weyl vs non-Weyl classification with balanced-vertex witnesses")

    p = add("resonances", "resonance positions inside |k| <= RMAX (CSV)")
    p.add_argument("--rmax", type=float, required=True)
    p.add_argument("--orbit-cap", type=int, default=None)
    p.add_argument("--svg", default=None, metavar="PATH", help="also render a scatter plot")

    p = add("count", "counting function N(R) on a radius grid plus slope fit")
    p.add_argument("--rmax", type=float, required=True)
    p.add_argument("--steps", type=int, default=40)
    p.add_argument("--orbit-cap", type=int, default=None)

    p = add("evaluate", "evaluate det(I - e^(ikL) S) at a complex k")
    p.add_argument("--k", required=True, help='complex k, e.g. "3.14" or "1+0.5j" or "1,0.5"')

    return parser


def _load_graph(path: str) -> MetricGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_dict(json.load(fh))


def _rat(x) -> str:
    return format_length(x)


def _parse_k(text: str) -> complex:
    raw = text.strip()
    if "," in raw:
        re_part, im_part = raw.split(",", 1)
        return complex(float(re_part), float(im_part))
    return complex(raw.replace(" ", ""))


def _parse_deletions(flags: list[str]) -> dict[int, int]:
    out: dict[int, int] = {}
    for flag in flags:
        try:
            vertex, bond = flag.split(":", 1)
            vertex_id, bond_id = int(vertex), int(bond)
        except ValueError:
            raise ValueError(f"--delete expects VERTEX:BOND, got {flag!r}") from None
        if vertex_id in out:
            raise ValueError(f"vertex {vertex_id} listed twice in --delete")
        out[vertex_id] = bond_id
    return out


def _condition_json(graph: MetricGraph, cond: ExponentialPolynomial) -> dict:
    equilateral = graph.is_equilateral and graph.has_exact_lengths
    terms = []
    for length, coeff in cond.terms:
        term = {"length": _rat(length), "coefficient": _rat(coeff)}
        if equilateral:
            term["length_over_l"] = _rat(Fraction(length) / graph.edge_length)
        terms.append(term)
    out: dict = {"terms": terms, "equilateral": equilateral}
    if equilateral:
        out["edge_length"] = _rat(graph.edge_length)
    return out


def _orbit_json(orbit) -> dict:
    return {
        "cycles": [list(c.bonds) for c in orbit.cycles],
        "m": orbit.m,
        "amplitude": _rat(orbit.total_amplitude),
        "length": _rat(orbit.total_length),
    }


def _sorted_orbits(orbit_list):
    return sorted(
        orbit_list,
        key=lambda o: (o.total_length, o.n_bonds, tuple(c.bonds for c in o.cycles)),
    )


def _families(graph: MetricGraph, cap):
    cond = orbits_mod.condition_for_graph(graph, cap=cap)
    red = solver.reduce_to_polynomial(cond, base_hint=solver.edge_length_quantum(graph))
    return solver.find_roots(red)


def cmd_validate(args) -> int:
    graph = _load_graph(args.input)
    report = validate(graph)
    print(
        json.dumps(
            {
                "valid": report.ok,
                "violations": [
                    {"code": i.code, "message": i.message} for i in report.issues
                ],
            },
            indent=2,
        )
    )
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_condition(args) -> int:
    graph = _load_graph(args.input)
    cond = orbits_mod.condition_for_graph(graph, cap=args.orbit_cap)
    print(json.dumps(_condition_json(graph, cond), indent=2))
    return EXIT_OK


def cmd_orbits(args) -> int:
    graph = _load_graph(args.input)
    system = assemble_system(graph)
    cycles = orbits_mod.enumerate_cycles(system, cap=args.orbit_cap)
    orbit_list = orbits_mod.enumerate_irreducible_pseudo_orbits(cycles, cap=args.orbit_cap)
    print(json.dumps([_orbit_json(o) for o in _sorted_orbits(orbit_list)], indent=2))
    return EXIT_OK


def cmd_reduce(args) -> int:
    graph = _load_graph(args.input)
    system = assemble_system(graph)
    deletions = _parse_deletions(args.delete) or None
    reduced = orbits_mod.ghost_reduce(graph, deletions=deletions, system=system)
    cycles = orbits_mod.enumerate_cycles(reduced, cap=args.orbit_cap)
    orbit_list = orbits_mod.enumerate_irreducible_pseudo_orbits(cycles, cap=args.orbit_cap)
    cond = orbits_mod.resonance_condition(orbit_list)
    out = {
        "deletions": {str(v): b for v, b in reduced.deletions.items()},
        "ghosts": [
            {
                "ghost_bond": g.deleted_bond,
                "vertex": g.vertex_id,
                "continuations": list(g.continuations),
            }
            for g in reduced.ghosts
        ],
        "orbits": [_orbit_json(o) for o in _sorted_orbits(orbit_list)],
    }
    out.update(_condition_json(graph, cond))
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_effective_size(args) -> int:
    graph = _load_graph(args.input)
    system = assemble_system(graph)
    result = effective_size(system, graph)
    balanced = classify_weyl(graph).balanced_vertices
    out = {
        "n_nonzero": result.n_nonzero,
        "W": _rat(result.effective_size),
        "W_over_l": _rat(Fraction(result.effective_size) / Fraction(result.edge_length))
        if graph.has_exact_lengths
        else None,
        "vol": _rat(result.vol),
        "is_weyl": result.is_weyl,
        "balanced_vertices": list(balanced),
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_classify(args) -> int:
    graph = _load_graph(args.input)
    cls = classify_weyl(graph)
    n_nonzero = None
    w = None
    if graph.is_equilateral:
        result = effective_size(assemble_system(graph), graph)
        n_nonzero = result.n_nonzero
        w = _rat(result.effective_size)
    out = {
        "classification": cls.kind,
        "is_weyl": cls.is_weyl,
        "balanced_vertices": list(cls.balanced_vertices),
        "vol": _rat(graph.vol),
        "n_nonzero": n_nonzero,
        "W": w,
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_resonances(args) -> int:
    graph = _load_graph(args.input)
    try:
        families = _families(graph, args.orbit_cap)
        points = solver.resonance_points(families, args.rmax)
    except TrivialConditionError as exc:
        print(f"note: {exc}", file=sys.stderr)
        families, points = [], []
    print("re_k,im_k,multiplicity,family_id,type")
    for p in points:
        print(f"{p.k.real!r},{p.k.imag!r},{p.multiplicity},{p.family_id},{p.kind}")
    if args.svg:
        solver.render_scatter(points, args.svg)
        print(f"wrote {args.svg}", file=sys.stderr)
    return EXIT_OK


def cmd_count(args) -> int:
    graph = _load_graph(args.input)
    if graph.has_exact_lengths:
        try:
            families = _families(graph, args.orbit_cap)
            estimate = solver.count_resonances(families, args.rmax, args.steps)
        except TrivialConditionError:
            estimate = None
    else:
        print("note: inexact lengths; counting zeros by contour integration "
              "(numerical-only)", file=sys.stderr)
        estimate = solver.contour_counting_estimate(
            assemble_system(graph), args.rmax, args.steps
        )
    print("radius,count")
    if estimate is None:
        summary = {"fitted_slope": 0.0, "predicted_slope": 0.0, "W": "0", "mode": "lattice"}
        for i in range(args.steps):
            print(f"{args.rmax * (i + 1) / args.steps!r},0")
    else:
        for r, c in zip(estimate.radii, estimate.counts):
            print(f"{r!r},{c}")
        summary = {
            "fitted_slope": estimate.fitted_slope,
            "predicted_slope": estimate.predicted_slope,
            "W": _rat(estimate.effective_size)
            if estimate.effective_size is not None
            else None,
            "mode": estimate.mode,
        }
    print(json.dumps(summary))
    return EXIT_OK


def cmd_evaluate(args) -> int:
    graph = _load_graph(args.input)
    system = assemble_system(graph)
    k = _parse_k(args.k)
    value = solver.evaluate_condition(system, k)
    print(
        json.dumps(
            {
                "k": [k.real, k.imag],
                "value": [value.real, value.imag],
                "abs": abs(value),
            }
        )
    )
    return EXIT_OK


_COMMANDS = {
    "validate": cmd_validate,
    "condition": cmd_condition,
    "orbits": cmd_orbits,
    "reduce": cmd_reduce,
    "effective-size": cmd_effective_size,
    "classify": cmd_classify,
    "resonances": cmd_resonances,
    "count": cmd_count,
    "evaluate": cmd_evaluate,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return EXIT_INVALID
    try:
        return _COMMANDS[args.command](args)
    except json.JSONDecodeError as exc:
        print(
            f"error: malformed JSON: line {exc.lineno} column {exc.colno}: {exc.msg}",
            file=sys.stderr,
        )
        return EXIT_INVALID
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CapabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except (GraphValidationError, GhostReductionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except QGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()

"""From resonance conditions to resonance positions and counting asymptotics.

For commensurable edge lengths the condition sum_L c_L e^(ikL) collapses to
an ordinary polynomial p(z) with z = e^(ik*l0), l0 the rational gcd of the
term lengths. Every root z0 != 0 of p yields a lattice of resonances
k = (arg z0 + 2*pi*n - i*ln|z0|)/l0; |z0| = 1 gives real k (eigenvalue
type), otherwise a true resonance below the real axis for |z0| > 1.

Incommensurable lengths keep the determinant form det(I - e^(ikL) S), which
is evaluated numerically; zeros inside a disc are then counted with the
argument principle (winding of the determinant phase along the circle).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from . import polys, ratlinalg
from .condition import ExponentialPolynomial
from .errors import (
    CapabilityError,
    IncommensurableLengthsError,
    InternalConsistencyError,
    TrivialConditionError,
)
from .scattering import ScatteringSystem

#: Reductions beyond this degree are refused: they arise from lengths that
#: are commensurable only through huge denominators and behave numerically
#: like incommensurable ones.
MAX_REDUCED_DEGREE = 10_000

NEWTON_RESIDUAL = 1e-13


def rational_gcd(x: Fraction, y: Fraction) -> Fraction:
    return Fraction(
        gcd(x.numerator * y.denominator, y.numerator * x.denominator),
        x.denominator * y.denominator,
    )


@dataclass(frozen=True)
class PolynomialReduction:
    """p(z) = sum_j coeffs[j] z^j with z = e^(ik * base_length)."""

    base_length: Fraction
    coeffs: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def effective_size(self) -> Fraction:
        """Half the longest orbit length: base_length * degree / 2."""
        return self.base_length * self.degree / 2

    def eval_complex(self, z: complex) -> complex:
        return polys.eval_complex(list(self.coeffs), z)


def edge_length_quantum(graph) -> Fraction | None:
    """Rational gcd of the edge lengths; None when lengths are inexact."""
    if not graph.has_exact_lengths or not graph.edges:
        return None
    base = Fraction(graph.edges[0].length)
    for e in graph.edges[1:]:
        base = rational_gcd(base, Fraction(e.length))
    return base


def reduce_to_polynomial(
    cond: ExponentialPolynomial, base_hint: Fraction | None = None
) -> PolynomialReduction:
    """Collapse commensurable term lengths onto integer powers of e^(ik*l0).

    l0 is the rational gcd of the term lengths, further refined by
    ``base_hint`` when given (pass the graph's edge-length quantum so the
    roots come out on the per-edge scale even when only multiples of it
    appear among the orbit lengths; the effective size l0 * degree / 2 does
    not depend on this choice).
    """
    if cond.constant_term != 1:
        raise ValueError("resonance conditions are normalized to constant term 1")
    lengths = [l for l, _ in cond.terms if l != 0]
    if not lengths:
        return PolynomialReduction(base_length=Fraction(1), coeffs=(Fraction(1),))
    base = lengths[0]
    for l in lengths[1:]:
        base = rational_gcd(base, l)
    if base_hint is not None:
        base = rational_gcd(base, Fraction(base_hint))
    degree = max(lengths) / base
    if degree > MAX_REDUCED_DEGREE:
        raise IncommensurableLengthsError(
            f"term lengths have a common measure only at degree {degree}; "
            "treating them as incommensurable (use the numerical route)"
        )
    coeffs = [Fraction(0)] * (int(degree) + 1)
    for l, c in cond.terms:
        coeffs[int(l / base)] = c
    return PolynomialReduction(base_length=base, coeffs=tuple(coeffs))


@dataclass(frozen=True)
class ResonanceFamily:
    """The k-lattice generated by one root z of the reduced polynomial.

    Members are k_n = (theta + 2*pi*n - i*ln|z|)/base_length over integer n.
    """

    family_id: int
    z: complex
    multiplicity: int
    base_length: Fraction
    z_exact: Fraction | None = None

    @property
    def theta(self) -> float:
        return cmath.phase(self.z)

    @property
    def log_abs(self) -> float:
        return math.log(abs(self.z))

    @property
    def is_eigenvalue_type(self) -> bool:
        """|z| = 1: the whole family sits on the real k axis."""
        if self.z_exact is not None:
            return abs(self.z_exact) == 1
        return abs(self.log_abs) < 1e-12

    @property
    def kind(self) -> str:
        return "eigenvalue" if self.is_eigenvalue_type else "resonance"

    def k_at(self, n: int) -> complex:
        ell = float(self.base_length)
        # + 0.0 normalizes a signed zero in the eigenvalue-type case
        return complex((self.theta + 2 * math.pi * n) / ell, -self.log_abs / ell + 0.0)

    def indices_in_disc(self, radius: float) -> range:
        """Integer n with |k_n| <= radius, in closed form."""
        if radius <= 0:
            return range(0)
        ell = float(self.base_length)
        spread = (radius * ell) ** 2 - self.log_abs**2
        if spread < 0:
            return range(0)
        b = math.sqrt(spread)
        lo = math.ceil((-b - self.theta) / (2 * math.pi) - 1e-12)
        hi = math.floor((b - self.theta) / (2 * math.pi) + 1e-12)
        return range(lo, hi + 1)

    def count_in_disc(self, radius: float) -> int:
        return len(self.indices_in_disc(radius)) * self.multiplicity


def _newton_polish(coeffs: list[Fraction], z: complex) -> complex:
    cf = [complex(c) for c in coeffs]
    df = [complex(i * c) for i, c in enumerate(coeffs)][1:]
    scale = max(1.0, sum(abs(c) * max(1.0, abs(z)) ** i for i, c in enumerate(cf)))
    for _ in range(60):
        f = polys.eval_complex(cf, z)
        if abs(f) <= NEWTON_RESIDUAL * scale:
            break
        d = polys.eval_complex(df, z)
        if d == 0:
            break
        z = z - f / d
    return z


def find_roots(red: PolynomialReduction) -> list[ResonanceFamily]:
    """All roots of the reduced polynomial with exact multiplicities.

    Multiplicities come from the exact square-free decomposition over the
    rationals, never from clustering of numerical roots. Rational roots are
    recovered exactly; the rest are polished to a 1e-13 residual on their
    square-free factor.
    """
    if red.degree == 0:
        raise TrivialConditionError("no resonances (trivial condition)")
    factors = polys.squarefree_decomposition(list(red.coeffs))
    found: list[tuple[complex, Fraction | None, int]] = []
    total = 0
    for factor, mult in factors:
        total += mult * polys.degree(factor)
        rest = factor
        for root in sorted(polys.rational_roots(factor)):
            rest = polys.deflate_by_root(rest, root)
            found.append((complex(root), root, mult))
        if polys.degree(rest) > 0:
            numeric = np.roots([float(c) for c in reversed(rest)])
            for z in sorted(numeric, key=lambda w: (round(w.real, 12), round(w.imag, 12))):
                found.append((_newton_polish(rest, complex(z)), None, mult))
    if total != red.degree:
        raise InternalConsistencyError(
            f"square-free factors account for degree {total}, expected {red.degree}"
        )
    # p(0) = 1, so z = 0 never occurs and log|z| is finite
    found.sort(
        key=lambda item: (
            round(math.log(abs(item[0])), 10),
            round(cmath.phase(item[0]), 10),
        )
    )
    return [
        ResonanceFamily(
            family_id=i,
            z=z,
            multiplicity=mult,
            base_length=red.base_length,
            z_exact=exact,
        )
        for i, (z, exact, mult) in enumerate(found)
    ]


def evaluate_condition(system: ScatteringSystem, k: complex) -> complex:
    """det(I - e^(ikL) S); its zero set is the resonance set.

    The constant term as Im k -> +inf is +1, matching the orbit sum. Works
    for arbitrary real edge lengths.
    """
    s = np.array([[float(x) for x in row] for row in system.S], dtype=complex)
    phases = np.exp(1j * complex(k) * system.length_diagonal_float())
    m = np.eye(len(s), dtype=complex) - phases[:, None] * s
    return complex(np.linalg.det(m))


def _condition_phase(system_s: np.ndarray, lengths: np.ndarray, k: complex) -> float | None:
    """Phase of det(I - e^(ikL) S) via slogdet; None if singular/overflowed."""
    m = np.eye(len(system_s), dtype=complex) - np.exp(1j * k * lengths)[:, None] * system_s
    sign, logabs = np.linalg.slogdet(m)
    if sign == 0 or not np.isfinite(logabs):
        return None
    return float(np.angle(sign))


def determinant_condition(system: ScatteringSystem) -> ExponentialPolynomial:
    """Exact determinant route to the resonance condition.

    For rational edge lengths, det(I - e^(ikL) S) is an exponential
    polynomial with rational coefficients: on equilateral graphs it is the
    reversed characteristic polynomial of S; otherwise it comes from an
    exact determinant over the polynomial ring in z = e^(ik*l0). Must agree
    term by term with the pseudo-orbit sum.
    """
    lengths = list(system.lengths)
    if not all(isinstance(l, Fraction) for l in lengths):
        raise IncommensurableLengthsError(
            "edge lengths are not exact rationals; no polynomial determinant exists"
        )
    s_rows = [list(row) for row in system.S]
    if system.graph.is_equilateral:
        ell = system.graph.edge_length
        coeffs = ratlinalg.charpoly(s_rows)
        return ExponentialPolynomial({ell * j: c for j, c in enumerate(coeffs) if c})
    base = lengths[0]
    for l in lengths[1:]:
        base = rational_gcd(base, l)
    n = len(s_rows)
    if n > 16:
        raise CapabilityError(
            "exact polynomial determinant limited to 16 bonds on "
            "non-equilateral graphs; use the numerical evaluation"
        )
    entries: list[list[dict]] = []
    for r in range(n):
        exp_r = int(lengths[r] / base)
        row = []
        for c in range(n):
            e: dict = {}
            if r == c:
                e[0] = Fraction(1)
            if s_rows[r][c]:
                e[exp_r] = e.get(exp_r, Fraction(0)) - s_rows[r][c]
                if not e[exp_r]:
                    del e[exp_r]
            row.append(e)
        entries.append(row)
    det = ratlinalg.poly_matrix_det(entries)
    return ExponentialPolynomial({base * e: c for e, c in det.items() if c})


@dataclass(frozen=True)
class CountingEstimate:
    radii: tuple[float, ...]
    counts: tuple[int, ...]
    fitted_slope: float
    predicted_slope: float | None
    effective_size: Fraction | float | None
    mode: str  # "lattice" or "contour"


def _fit_slope(radii, counts) -> float:
    half = len(radii) // 2
    xs = np.array(radii[half:], dtype=float)
    ys = np.array(counts[half:], dtype=float)
    if len(xs) < 2:
        xs = np.array(radii, dtype=float)
        ys = np.array(counts, dtype=float)
    return float(np.polyfit(xs, ys, 1)[0])


def count_resonances(
    families: list[ResonanceFamily], r_max: float, steps: int = 40
) -> CountingEstimate:
    """Counting function N(R) over a grid of radii, with a slope fit.

    Counts lattice members of every family in the closed disc |k| <= R with
    multiplicity, both signs of k. The slope is fitted on the larger half of
    the radii and compared against 2 W / pi with the effective size W taken
    from the polynomial degree.
    """
    if r_max <= 0:
        raise ValueError("r_max must be positive")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    radii = [r_max * (i + 1) / steps for i in range(steps)]
    counts = [sum(f.count_in_disc(r) for f in families) for r in radii]
    if families:
        degree = sum(f.multiplicity for f in families)
        w: Fraction | None = families[0].base_length * degree / 2
        predicted = 2 * float(w) / math.pi
    else:
        w = None
        predicted = None
    return CountingEstimate(
        radii=tuple(radii),
        counts=tuple(counts),
        fitted_slope=_fit_slope(radii, counts),
        predicted_slope=predicted,
        effective_size=w,
        mode="lattice",
    )


def count_zeros_in_disc(
    system: ScatteringSystem,
    radius: float,
    *,
    max_segments: int = 1 << 18,
    winding_tol: float = 1e-6,
) -> int:
    """Number of zeros of det(I - e^(ikL) S) with |k| < radius.

    Argument principle: winding number of the determinant phase along the
    circle, tracked with adaptive bisection until each step turns by at
    most 0.5 rad. A zero sitting (numerically) on the contour bumps the
    radius by one part in 10^6 and retries.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    s = np.array([[float(x) for x in row] for row in system.S], dtype=complex)
    lengths = system.length_diagonal_float()

    for attempt in range(4):
        r = radius * (1 + attempt * 1e-6)
        result = _winding(s, lengths, r, max_segments, winding_tol)
        if result is not None:
            return result
    raise InternalConsistencyError(
        f"winding number did not converge on |k| = {radius}"
    )


def _winding(s, lengths, radius, max_segments, tol) -> int | None:
    # Uniform sampling doubled globally until the winding integer repeats at
    # a resolution where every phase step is small. Local-only refinement is
    # unsound here: a high-multiplicity zero just inside the contour swings
    # the phase by a near-multiple of 2*pi within one segment, which wraps
    # to a small step and would be accepted without ever being split.
    def phase_at(t: float) -> float | None:
        return _condition_phase(s, lengths, radius * cmath.exp(1j * t))

    def wrap(d: float) -> float:
        while d > math.pi:
            d -= 2 * math.pi
        while d <= -math.pi:
            d += 2 * math.pi
        return d

    n = 256
    ph: list[float] = []
    for i in range(n):
        p = phase_at(2 * math.pi * i / n)
        if p is None:
            return None
        ph.append(p)
    previous: int | None = None
    while n <= max_segments:
        deltas = [wrap(ph[(i + 1) % n] - ph[i]) for i in range(n)]
        if max(abs(d) for d in deltas) <= 0.5:
            winding = sum(deltas) / (2 * math.pi)
            nearest = round(winding)
            if abs(winding - nearest) <= tol:
                if previous is not None and previous == nearest:
                    return int(nearest)
                previous = nearest
            else:
                previous = None
        else:
            previous = None
        # double the resolution, reusing existing samples
        refined: list[float] = []
        for i in range(n):
            mid = phase_at(2 * math.pi * (2 * i + 1) / (2 * n))
            if mid is None:
                return None
            refined.append(ph[i])
            refined.append(mid)
        ph = refined
        n *= 2
    return None


def contour_counting_estimate(
    system: ScatteringSystem, r_max: float, steps: int = 20
) -> CountingEstimate:
    """Counting estimate for graphs without a usable polynomial reduction."""
    if r_max <= 0:
        raise ValueError("r_max must be positive")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    radii = [r_max * (i + 1) / steps for i in range(steps)]
    counts = [count_zeros_in_disc(system, r) for r in radii]
    return CountingEstimate(
        radii=tuple(radii),
        counts=tuple(counts),
        fitted_slope=_fit_slope(radii, counts),
        predicted_slope=None,
        effective_size=None,
        mode="contour",
    )


@dataclass(frozen=True)
class ResonancePoint:
    k: complex
    multiplicity: int
    family_id: int
    kind: str


def resonance_points(families: list[ResonanceFamily], r_max: float) -> list[ResonancePoint]:
    """All family members in the closed disc, sorted for stable output."""
    points = [
        ResonancePoint(
            k=f.k_at(n), multiplicity=f.multiplicity, family_id=f.family_id, kind=f.kind
        )
        for f in families
        for n in f.indices_in_disc(r_max)
    ]
    points.sort(key=lambda p: (round(p.k.real, 12), round(p.k.imag, 12), p.family_id))
    return points


def render_scatter(points: list[ResonancePoint], path: str) -> None:
    """Static SVG scatter of resonance positions in the k plane."""
    try:
        import matplotlib
    except ImportError as exc:  # pragma: no cover - depends on environment
        raise CapabilityError(
            "matplotlib is required for SVG output (pip install qgraph[plot])"
        ) from exc
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 4))
    for kind, color in (("eigenvalue", "tab:blue"), ("resonance", "tab:red")):
        xs = [p.k.real for p in points if p.kind == kind]
        ys = [p.k.imag for p in points if p.kind == kind]
        if xs:
            ax.scatter(xs, ys, s=14, label=kind, color=color)
    ax.axhline(0.0, lw=0.5, color="gray")
    ax.set_xlabel("Re k")
    ax.set_ylabel("Im k")
    if points:
        ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)

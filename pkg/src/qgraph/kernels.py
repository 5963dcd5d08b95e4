"""Backend selection for the enumeration kernels.

The compiled extension is used when it imported cleanly; QGRAPH_PURE=1
forces the pure-Python kernels. The compiled rational accumulator works on
int64 and raises OverflowError when a value will not fit; the dispatcher
then reruns the exact pure path, so results are always exact.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import lcm

from . import _pure_kernels as pure

try:
    from . import _speedups as compiled  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on the build
    compiled = None

#: Node count above which int64 bitmasks no longer fit; compiled kernels
#: refuse and the pure path (arbitrary precision ints) takes over.
MAX_COMPILED_NODES = 62

_I64 = 2**62


def available_backends() -> list[str]:
    return ["pure"] if compiled is None else ["pure", "compiled"]


def default_backend() -> str:
    if compiled is None or os.environ.get("QGRAPH_PURE") == "1":
        return "pure"
    return "compiled"


def _module(backend: str | None):
    name = backend or default_backend()
    if name == "pure":
        return pure
    if name == "compiled":
        if compiled is None:
            raise ValueError("compiled backend is not available")
        return compiled
    raise ValueError(f"unknown backend {name!r}")


def simple_cycles(succ: list[list[int]], cap: int, backend: str | None = None) -> list[tuple[int, ...]]:
    mod = _module(backend)
    if mod is compiled and len(succ) > MAX_COMPILED_NODES:
        mod = pure
    return mod.simple_cycles(succ, cap)


def disjoint_subsets(masks: list[int], cap: int, backend: str | None = None) -> list[tuple[int, ...]]:
    mod = _module(backend)
    if mod is compiled and any(m >> 62 for m in masks):
        mod = pure
    return mod.disjoint_subsets(masks, cap)


def accumulate_condition(
    masks: list[int],
    lengths: list[Fraction],
    amplitudes: list[Fraction],
    cap: int,
    backend: str | None = None,
) -> dict[Fraction, Fraction]:
    """Coefficients of the pseudo-orbit sum, keyed by exact total length.

    Scales the rational cycle lengths to integers, runs the selected
    backend, and converts back. Falls back to the pure kernels whenever the
    compiled one cannot represent the data on int64.
    """
    scale = lcm(*(l.denominator for l in lengths)) if lengths else 1
    int_lengths = [int(l * scale) for l in lengths]
    num = [a.numerator for a in amplitudes]
    den = [a.denominator for a in amplitudes]

    mod = _module(backend)
    if mod is compiled:
        fits = (
            all(abs(v) < _I64 for v in num)
            and all(v < _I64 for v in den)
            and all(v < _I64 for v in int_lengths)
            and not any(m >> 62 for m in masks)
        )
        if fits:
            try:
                raw = compiled.accumulate_condition(masks, int_lengths, num, den, cap)
                return {
                    Fraction(l, scale): Fraction(n, d) for l, (n, d) in raw.items()
                }
            except OverflowError:
                pass
    raw = pure.accumulate_condition(masks, int_lengths, num, den, cap)
    return {Fraction(l, scale): Fraction(n, d) for l, (n, d) in raw.items()}

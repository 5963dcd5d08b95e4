"""Exponential polynomials: finite sums  sum_L c_L * e^(i k L).

The canonical form of a resonance condition. Coefficients are exact
rationals keyed by exact rational lengths; the empty pseudo orbit pins the
constant term to 1. Exact cancellation drops a term entirely, so
``coefficient`` returns 0 for absent lengths.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Iterable, Mapping


class ExponentialPolynomial:
    def __init__(self, terms: Mapping[Fraction, Fraction]):
        cleaned: dict[Fraction, Fraction] = {}
        for length, coeff in terms.items():
            if not isinstance(length, Fraction):
                raise TypeError("term lengths must be exact rationals")
            if length < 0:
                raise ValueError("term lengths must be nonnegative")
            coeff = Fraction(coeff)
            if coeff:
                cleaned[length] = coeff
        self._terms: tuple[tuple[Fraction, Fraction], ...] = tuple(
            sorted(cleaned.items(), key=lambda kv: kv[0])
        )

    @property
    def terms(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """(length, coefficient) pairs, ascending in length, zeros dropped."""
        return self._terms

    def coefficient(self, length) -> Fraction:
        length = Fraction(length)
        for l, c in self._terms:
            if l == length:
                return c
        return Fraction(0)

    @property
    def constant_term(self) -> Fraction:
        return self.coefficient(0)

    @property
    def max_length(self) -> Fraction:
        """Largest length with a nonzero coefficient (0 if constant)."""
        return self._terms[-1][0] if self._terms else Fraction(0)

    @property
    def is_constant(self) -> bool:
        return all(l == 0 for l, _ in self._terms)

    def coefficient_vector(self, base_length: Fraction, up_to: Fraction) -> list[Fraction]:
        """Dense coefficients at 0, base, 2*base, ..., up to ``up_to`` inclusive.

        Every listed length must be an integer multiple of ``base_length``.
        """
        base = Fraction(base_length)
        top = Fraction(up_to)
        n = int(top / base)
        if n * base != top:
            raise ValueError("up_to is not a multiple of base_length")
        out = [Fraction(0)] * (n + 1)
        for l, c in self._terms:
            j = l / base
            if j.denominator != 1:
                raise ValueError(f"length {l} is not a multiple of {base}")
            if j > n:
                raise ValueError(f"length {l} exceeds up_to")
            out[int(j)] = c
        return out

    def evaluate(self, k: complex) -> complex:
        return sum(
            (float(c) * cmath.exp(1j * k * float(l)) for l, c in self._terms),
            0j,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExponentialPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "ExponentialPolynomial(0)"
        bits = []
        for l, c in self._terms:
            bits.append(str(c) if l == 0 else f"{c}*e^(ik*{l})")
        return "ExponentialPolynomial(" + " + ".join(bits) + ")"

    @staticmethod
    def from_pairs(pairs: Iterable[tuple[Fraction, Fraction]]) -> "ExponentialPolynomial":
        terms: dict[Fraction, Fraction] = {}
        for length, coeff in pairs:
            length = Fraction(length)
            terms[length] = terms.get(length, Fraction(0)) + Fraction(coeff)
        return ExponentialPolynomial(terms)

"""Exact integer and rational arithmetic: factorization, gcd, rational roots.

Everything here is exact.  Rational values are `fractions.Fraction`, which
already guarantees lowest-terms storage, positive denominators and value
equality, so we use it directly instead of rolling our own numerator/
denominator pair.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

Rational = Fraction


class PrimePower(NamedTuple):
    """An atom p**e with p prime and e >= 1."""

    p: int
    e: int

    @property
    def value(self) -> int:
        return self.p**self.e


# Factorizations are tuples of PrimePower with strictly increasing p.
Factorization = tuple[PrimePower, ...]

_factor_cache: dict[int, Factorization] = {1: ()}
_factor_lock = threading.Lock()


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check (desk scale)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> Factorization:
    """Factor n >= 1 into prime-power atoms by trial division.

    The empty tuple represents 1.  Results are cached; the cache is shared
    and append-only, so concurrent callers are safe.
    """
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    cached = _factor_cache.get(n)
    if cached is not None:
        return cached
    m = n
    atoms = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            atoms.append(PrimePower(d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        atoms.append(PrimePower(m, 1))
    result = tuple(atoms)
    with _factor_lock:
        _factor_cache[n] = result
    return result


def product(fac: Factorization) -> int:
    out = 1
    for atom in fac:
        out *= atom.value
    return out


def gcd(a: int, b: int) -> int:
    """Greatest common divisor; (0, 0) is rejected."""
    if a < 0 or b < 0:
        raise ValueError("gcd arguments must be non-negative")
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer-coefficient polynomial, constant term first.

    The zero polynomial is disallowed; the leading coefficient is nonzero.
    """

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("zero polynomial is not representable")
        if self.coefficients[-1] == 0 and len(self.coefficients) > 1:
            raise ValueError("leading coefficient must be nonzero")
        if self.coefficients == (0,):
            raise ValueError("zero polynomial is not representable")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(poly: IntPolynomial) -> set[Fraction]:
    """All rational roots of an integer polynomial.

    Rational root theorem: every rational root in lowest terms is
    +-(divisor of constant term)/(divisor of leading coefficient).  Each
    candidate is verified by exact substitution, so the returned set is
    exactly the set of rational roots.
    """
    coeffs = list(poly.coefficients)
    roots: set[Fraction] = set()
    # Strip a factor x**m when the constant term vanishes; 0 is then a root.
    while coeffs[0] == 0:
        roots.add(Fraction(0))
        coeffs.pop(0)
        if len(coeffs) == 1:
            return roots
    reduced = IntPolynomial(tuple(coeffs))
    lead = coeffs[-1]
    candidates: set[Fraction] = set()
    for num in _divisors(coeffs[0]):
        for den in _divisors(lead):
            candidates.add(Fraction(num, den))
            candidates.add(Fraction(-num, den))
    for cand in candidates:
        if reduced.evaluate(cand) == 0:
            roots.add(cand)
    return roots

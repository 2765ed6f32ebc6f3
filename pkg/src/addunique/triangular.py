"""Triangular numbers, representation enumeration and decomposition facts.

Provides the predicates and complete enumerations the certification engine
relies on: sums of k positive triangular numbers, the exceptional set
{1..k-1, k+1, k+3}, three-triangular decompositions with zeros allowed
(Gauss), and four-part decompositions of integers >= 8.
"""
from __future__ import annotations

import math
import threading
from typing import Iterator, NamedTuple


class LemmaViolation(Exception):
    """A computed representation fact disagrees with the expected one.

    This is a falsification detector; it must never fire on valid inputs.
    """


class GaussViolation(Exception):
    """No three-triangular decomposition was found (must never happen)."""


class Representation(NamedTuple):
    """A canonical (non-decreasing) multiset of positive triangulars."""

    parts: tuple[int, ...]
    total: int


def triangular(n: int) -> int:
    """T_n = n(n+1)/2 for n >= 0."""
    if n < 0:
        raise ValueError(f"triangular index must be >= 0, got {n}")
    return n * (n + 1) // 2


def triangular_index(m: int) -> int | None:
    """The n with T_n == m, or None if m is not triangular (m >= 0)."""
    if m < 0:
        return None
    s = math.isqrt(8 * m + 1)
    if s * s != 8 * m + 1:
        return None
    return (s - 1) // 2


def is_positive_triangular(m: int) -> bool:
    """True iff m = n(n+1)/2 for some n >= 1."""
    return m >= 1 and triangular_index(m) is not None


_table_lock = threading.Lock()
_table: tuple[int, ...] = ()
_table_limit = 0


def triangulars_upto(limit: int) -> tuple[int, ...]:
    """Positive triangular numbers <= limit, ascending.  Memoized."""
    global _table, _table_limit
    if _table_limit < limit:
        with _table_lock:
            if _table_limit < limit:
                out = []
                n = 1
                while triangular(n) <= limit:
                    out.append(triangular(n))
                    n += 1
                _table = tuple(out)
                _table_limit = limit
    # The shared table may extend past limit; slice by binary search.
    table = _table
    lo, hi = 0, len(table)
    while lo < hi:
        mid = (lo + hi) // 2
        if table[mid] <= limit:
            lo = mid + 1
        else:
            hi = mid
    return table[:lo]


def iter_k_representations(m: int, k: int) -> Iterator[tuple[int, ...]]:
    """Lazily yield non-decreasing k-tuples of positive triangulars summing
    to m, in lexicographic order."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    tris = triangulars_upto(m)
    triset = set(tris)

    def rec(rem: int, left: int, minpart: int, acc: tuple[int, ...]):
        if left == 1:
            if rem >= minpart and rem in triset:
                yield acc + (rem,)
            return
        for t in tris:
            if t < minpart:
                continue
            if t * left > rem:
                break
            yield from rec(rem - t, left - 1, t, acc + (t,))

    yield from rec(m, k, 1, ())


def enumerate_k_representations(m: int, k: int) -> list[Representation]:
    """The complete, lexicographically sorted list of representations of m
    as a sum of k positive triangular numbers."""
    return [Representation(parts, m) for parts in iter_k_representations(m, k)]


def _representable_mask(k: int, bound: int) -> int:
    """Bitmask of sums of exactly k positive triangulars, bits 0..bound."""
    limit = (1 << (bound + 1)) - 1
    tri_mask = 0
    for t in triangulars_upto(bound):
        tri_mask |= 1 << t
    reach = tri_mask
    for _ in range(k - 1):
        acc = 0
        shifted = reach
        for t in triangulars_upto(bound):
            acc |= shifted << t
        reach = acc & limit
    return reach


def exceptional_set(k: int, bound: int) -> set[int]:
    """Integers in [1, bound] that are not sums of k positive triangulars.

    Checked against the expected set {1..k-1, k+1, k+3}; a mismatch raises
    LemmaViolation carrying the offending integers.
    """
    if k < 4:
        raise ValueError(f"exceptional_set requires k >= 4, got {k}")
    if bound < k + 10:
        raise ValueError(f"bound must be >= k + 10, got {bound}")
    reach = _representable_mask(k, bound)
    computed = {m for m in range(1, bound + 1) if not (reach >> m) & 1}
    expected = set(range(1, k)) | {k + 1, k + 3}
    if computed != expected:
        raise LemmaViolation(
            f"k={k}: exceptional set mismatch, unexpected={sorted(computed - expected)}, "
            f"missing={sorted(expected - computed)}"
        )
    return computed


def gauss_three_decomposition(n: int) -> tuple[int, int, int]:
    """n as a sum of three triangular numbers, zeros allowed.

    Returns the lexicographically smallest non-decreasing triple.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    tris = triangulars_upto(n)
    choices = (0,) + tris
    triset = set(choices)
    for t1 in choices:
        if 3 * t1 > n and t1 > 0:
            break
        for t2 in choices:
            if t2 < t1:
                continue
            if t1 + 2 * t2 > n and t2 > 0:
                break
            t3 = n - t1 - t2
            if t3 >= t2 and t3 in triset:
                return (t1, t2, t3)
    raise GaussViolation(f"no three-triangular decomposition for {n}")


def four_positive_decomposition(m: int) -> Representation:
    """The canonical four-part decomposition of m >= 8 into positive
    triangulars (first element of the k=4 enumeration)."""
    if m < 8:
        raise ValueError(f"m must be >= 8, got {m}")
    for parts in iter_k_representations(m, 4):
        return Representation(parts, m)
    raise LemmaViolation(f"{m} >= 8 has no four-triangular decomposition")


def star_decomposition(s: int) -> tuple[int, int, int, int]:
    """Indices (a, b, c, d) with T_a + T_b + T_c + T_d = T_s, all < s.

    Canonical: taken from the four-part decomposition of T_s.  Requires
    s >= 4; T_s for s <= 3 has no such decomposition.
    """
    if s < 4:
        raise ValueError(f"star_decomposition requires s >= 4, got {s}")
    rep = four_positive_decomposition(triangular(s))
    indices = []
    for part in rep.parts:
        idx = triangular_index(part)
        assert idx is not None and idx < s
        indices.append(idx)
    return tuple(indices)  # type: ignore[return-value]

"""Triangular numbers, representation enumeration and decompositions.

The enumeration is checked against an independent brute-force oracle built
from itertools.combinations_with_replacement, not the library's recursion.
"""
import itertools

import pytest

from addunique.triangular import (
    GaussViolation,
    Representation,
    enumerate_k_representations,
    exceptional_set,
    four_positive_decomposition,
    gauss_three_decomposition,
    is_positive_triangular,
    iter_k_representations,
    star_decomposition,
    triangular,
    triangular_index,
    triangulars_upto,
)


def brute_force_representations(m, k):
    """All non-decreasing k-tuples of positive triangulars summing to m."""
    tris = [t for t in (i * (i + 1) // 2 for i in range(1, m + 1)) if t <= m]
    return sorted(
        combo
        for combo in itertools.combinations_with_replacement(tris, k)
        if sum(combo) == m
    )


def test_triangular_values():
    assert [triangular(n) for n in range(8)] == [0, 1, 3, 6, 10, 15, 21, 28]
    with pytest.raises(ValueError):
        triangular(-1)


def test_triangular_index_roundtrip():
    for n in range(0, 200):
        assert triangular_index(triangular(n)) == n
    tri = {triangular(n) for n in range(100)}
    for m in range(triangular(99) + 1):
        if m not in tri:
            assert triangular_index(m) is None
    assert triangular_index(-5) is None


def test_is_positive_triangular():
    tri = {triangular(n) for n in range(1, 100)}
    for m in range(0, triangular(99) + 1):
        assert is_positive_triangular(m) == (m in tri)


def test_triangulars_upto():
    assert triangulars_upto(10) == (1, 3, 6, 10)
    assert triangulars_upto(2) == (1,)
    assert triangulars_upto(0) == ()
    # memo growth must not change slicing behaviour
    triangulars_upto(5000)
    assert triangulars_upto(10) == (1, 3, 6, 10)


def test_enumeration_matches_brute_force():
    for k in range(1, 6):
        for m in range(1, 121):
            got = [rep.parts for rep in enumerate_k_representations(m, k)]
            assert got == brute_force_representations(m, k), (m, k)


def test_enumeration_is_lazy_and_sorted():
    lazy = list(itertools.islice(iter_k_representations(36, 3), 3))
    full = [rep.parts for rep in enumerate_k_representations(36, 3)]
    assert lazy == full[:3]
    assert full == sorted(full)


def test_enumeration_rejects_bad_arguments():
    with pytest.raises(ValueError):
        enumerate_k_representations(0, 3)
    with pytest.raises(ValueError):
        enumerate_k_representations(5, 0)


def test_exceptional_set_small_bounds():
    for k in range(4, 8):
        expected = set(range(1, k)) | {k + 1, k + 3}
        assert exceptional_set(k, 500) == expected


def test_exceptional_set_rejects_bad_arguments():
    with pytest.raises(ValueError):
        exceptional_set(3, 100)
    with pytest.raises(ValueError):
        exceptional_set(5, 10)


def test_gauss_decomposition_properties():
    tri = {triangular(n) for n in range(0, 200)}
    for n in range(1, 2001):
        t1, t2, t3 = gauss_three_decomposition(n)
        assert t1 + t2 + t3 == n
        assert t1 <= t2 <= t3
        assert {t1, t2, t3} <= tri


def test_gauss_decomposition_is_lex_smallest():
    tri = [triangular(n) for n in range(0, 30)]
    for n in range(1, 200):
        best = min(
            (a, b, n - a - b)
            for a in tri
            for b in tri
            if b >= a and n - a - b >= b and (n - a - b) in tri
        )
        assert gauss_three_decomposition(n) == best


def test_four_positive_decomposition():
    for m in range(8, 301):
        rep = four_positive_decomposition(m)
        assert isinstance(rep, Representation)
        assert sum(rep.parts) == m and len(rep.parts) == 4
        assert all(is_positive_triangular(p) for p in rep.parts)
        assert rep.parts == tuple(sorted(rep.parts))
    with pytest.raises(ValueError):
        four_positive_decomposition(7)


def test_star_decomposition():
    for s in range(4, 60):
        indices = star_decomposition(s)
        assert len(indices) == 4
        assert all(1 <= i < s for i in indices)
        assert sum(triangular(i) for i in indices) == triangular(s)
    with pytest.raises(ValueError):
        star_decomposition(3)


def test_gauss_violation_is_exception():
    assert issubclass(GaussViolation, Exception)

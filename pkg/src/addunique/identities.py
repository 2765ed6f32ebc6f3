"""Additivity constraints over triangular summands.

An Identity is one instance of f(x1 + ... + xk) = f(x1) + ... + f(xk) with
every xi a positive triangular number, stored as a canonical non-decreasing
multiset (the equation is symmetric, so order carries no information).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .triangular import is_positive_triangular, iter_k_representations, triangulars_upto


@dataclass(frozen=True, order=True)
class Identity:
    k: int
    parts: tuple[int, ...]
    total: int

    def __post_init__(self) -> None:
        if self.k < 3:
            raise ValueError(f"identities require k >= 3, got {self.k}")
        if len(self.parts) != self.k:
            raise ValueError("parts length must equal k")
        if self.total != sum(self.parts):
            raise ValueError("total must equal the sum of the parts")


def identity_for(parts: Sequence[int]) -> Identity:
    """Canonicalize an explicit list of triangular summands."""
    for part in parts:
        if not is_positive_triangular(part):
            raise ValueError(f"{part} is not a positive triangular number")
    canon = tuple(sorted(parts))
    return Identity(k=len(canon), parts=canon, total=sum(canon))


def generate_identities(k: int, total_bound: int) -> list[Identity]:
    """All canonical k-part identities with total <= total_bound,
    sorted by (total, parts)."""
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    if total_bound < k:
        raise ValueError(f"total_bound must be >= k, got {total_bound}")
    triangulars_upto(total_bound)  # warm the shared table once
    out = []
    for total in range(k, total_bound + 1):
        for parts in iter_k_representations(total, k):
            out.append(Identity(k=k, parts=parts, total=total))
    return out

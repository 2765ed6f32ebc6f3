"""Partial multiplicative functions over prime-power atoms.

A multiplicative function is determined by its values on prime powers.
`PartialMultFn` records exact rational values for a set of atoms and
evaluates any integer whose atoms are all assigned; f(1) = 1 is built in
(the standard convention for multiplicative functions not identically zero).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

from .arith import PrimePower, factorize


class Conflict(Exception):
    """An atom was reassigned to a different value; carries both values."""

    def __init__(self, atom: PrimePower, old: Fraction, new: Fraction):
        super().__init__(f"conflicting values for {atom.p}^{atom.e}: {old} vs {new}")
        self.atom = atom
        self.old = old
        self.new = new


@dataclass(frozen=True)
class EvalResult:
    """Either a Known exact value or the list of missing atoms."""

    value: Fraction | None
    missing: tuple[PrimePower, ...] = ()

    @property
    def known(self) -> bool:
        return self.value is not None

    @staticmethod
    def of(value: Fraction) -> "EvalResult":
        return EvalResult(value=value)

    @staticmethod
    def unknown(missing: tuple[PrimePower, ...]) -> "EvalResult":
        return EvalResult(value=None, missing=missing)


@dataclass(frozen=True)
class IdentityWitness:
    """First n at which is_identity_up_to fails, with the failure mode."""

    n: int
    reason: str  # "unknown" or "wrong"
    missing: tuple[PrimePower, ...] = ()
    value: Fraction | None = None


class PartialMultFn:
    """Immutable assignment of rational values to prime-power atoms."""

    __slots__ = ("_assignments",)

    def __init__(self, assignments: Mapping[PrimePower, Fraction] | None = None):
        self._assignments = dict(assignments) if assignments else {}

    @property
    def assignments(self) -> Mapping[PrimePower, Fraction]:
        return MappingProxyType(self._assignments)

    def __len__(self) -> int:
        return len(self._assignments)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialMultFn):
            return NotImplemented
        return self._assignments == other._assignments

    def value_at(self, atom: PrimePower) -> Fraction | None:
        return self._assignments.get(atom)

    def assign(self, atom: PrimePower, value: Fraction) -> "PartialMultFn":
        """Return a new function with the atom pinned.

        Assigning the same value twice is a no-op; a different value raises
        Conflict (the engine's contradiction evidence).
        """
        value = Fraction(value)
        existing = self._assignments.get(atom)
        if existing is not None:
            if existing == value:
                return self
            raise Conflict(atom, existing, value)
        updated = dict(self._assignments)
        updated[atom] = value
        return PartialMultFn(updated)

    def evaluate(self, n: int) -> EvalResult:
        """f(n) by multiplicativity along the factorization of n.

        A zero value on any assigned atom short-circuits to Known(0): the
        product is zero whatever the remaining atoms evaluate to.
        """
        if n < 1:
            raise ValueError(f"evaluate requires n >= 1, got {n}")
        prod = Fraction(1)
        missing = []
        for atom in factorize(n):
            v = self._assignments.get(atom)
            if v is None:
                missing.append(atom)
            elif v == 0:
                return EvalResult.of(Fraction(0))
            else:
                prod *= v
        if missing:
            return EvalResult.unknown(tuple(missing))
        return EvalResult.of(prod)

    def is_identity_up_to(self, bound: int) -> tuple[bool, IdentityWitness | None]:
        """True iff f(n) = n for every n <= bound; else the least failure."""
        if bound < 1:
            raise ValueError(f"bound must be >= 1, got {bound}")
        for n in range(1, bound + 1):
            res = self.evaluate(n)
            if not res.known:
                return False, IdentityWitness(n, "unknown", missing=res.missing)
            if res.value != n:
                return False, IdentityWitness(n, "wrong", value=res.value)
        return True, None


def identity_fn_upto(bound: int) -> PartialMultFn:
    """The function assigning every atom p^e <= bound the value p^e."""
    assignments = {}
    for n in range(2, bound + 1):
        fac = factorize(n)
        if len(fac) == 1 and fac[0].value == n:
            assignments[fac[0]] = Fraction(n)
    return PartialMultFn(assignments)


def to_json_obj(f: PartialMultFn) -> dict:
    """JSON form: {"atoms": [{"p", "e", "num", "den"}, ...]}, sorted by atom.

    Numerators and denominators are decimal strings (arbitrary precision)."""
    atoms = []
    for atom in sorted(f.assignments):
        v = f.assignments[atom]
        atoms.append(
            {"p": atom.p, "e": atom.e, "num": str(v.numerator), "den": str(v.denominator)}
        )
    return {"atoms": atoms}


def from_json_obj(obj: dict) -> PartialMultFn:
    assignments = {}
    for entry in obj["atoms"]:
        atom = PrimePower(int(entry["p"]), int(entry["e"]))
        assignments[atom] = Fraction(int(entry["num"]), int(entry["den"]))
    return PartialMultFn(assignments)

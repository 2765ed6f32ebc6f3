"""Partial multiplicative functions over prime-power atoms."""
import math
import random
from fractions import Fraction

import pytest

from addunique.arith import PrimePower
from addunique.multfunc import (
    Conflict,
    PartialMultFn,
    from_json_obj,
    identity_fn_upto,
    to_json_obj,
)

A2 = PrimePower(2, 1)
A3 = PrimePower(3, 1)
A4 = PrimePower(2, 2)
A5 = PrimePower(5, 1)


def test_empty_function_knows_only_one():
    f = PartialMultFn()
    assert len(f) == 0
    assert f.evaluate(1).value == 1
    res = f.evaluate(12)
    assert not res.known
    assert res.missing == (A4, A3)


def test_evaluate_multiplies_atom_values():
    f = PartialMultFn({A2: Fraction(2), A3: Fraction(3), A5: Fraction(5)})
    assert f.evaluate(30).value == 30
    assert f.evaluate(6).value == 6
    # 4 = 2^2 is a different atom from 2
    assert not f.evaluate(4).known
    assert f.evaluate(4).missing == (A4,)


def test_evaluate_rejects_nonpositive():
    with pytest.raises(ValueError):
        PartialMultFn().evaluate(0)


def test_zero_value_short_circuits():
    f = PartialMultFn({A3: Fraction(0)})
    # f(21) = f(3) f(7) = 0 although f(7) is unassigned
    assert f.evaluate(21).value == 0


def test_assign_returns_new_instance():
    f = PartialMultFn()
    g = f.assign(A2, Fraction(2))
    assert len(f) == 0 and len(g) == 1
    assert g.value_at(A2) == 2
    # same value twice is a no-op
    assert g.assign(A2, Fraction(2)) is g


def test_assign_conflict():
    f = PartialMultFn({A2: Fraction(2)})
    with pytest.raises(Conflict) as err:
        f.assign(A2, Fraction(-2))
    assert err.value.atom == A2
    assert err.value.old == 2 and err.value.new == -2


def test_assignments_view_is_read_only():
    f = PartialMultFn({A2: Fraction(2)})
    with pytest.raises(TypeError):
        f.assignments[A3] = Fraction(3)


def test_multiplicativity_on_coprime_pairs():
    f = identity_fn_upto(400)
    rng = random.Random(3)
    for _ in range(300):
        a = rng.randrange(1, 20)
        b = rng.randrange(1, 20)
        if math.gcd(a, b) != 1:
            continue
        assert f.evaluate(a * b).value == f.evaluate(a).value * f.evaluate(b).value


def test_identity_fn_upto():
    f = identity_fn_upto(100)
    ok, witness = f.is_identity_up_to(100)
    assert ok and witness is None
    # 101 is prime and outside the assigned range
    ok, witness = f.is_identity_up_to(101)
    assert not ok
    assert witness.n == 101 and witness.reason == "unknown"
    assert witness.missing == (PrimePower(101, 1),)


def test_is_identity_witness_wrong():
    f = identity_fn_upto(10).assign(PrimePower(11, 1), Fraction(7))
    ok, witness = f.is_identity_up_to(12)
    assert not ok
    assert witness.n == 11 and witness.reason == "wrong" and witness.value == 7


def test_json_round_trip():
    f = PartialMultFn({A5: Fraction(-2, 3), A2: Fraction(7)})
    obj = to_json_obj(f)
    assert obj == {
        "atoms": [
            {"p": 2, "e": 1, "num": "7", "den": "1"},
            {"p": 5, "e": 1, "num": "-2", "den": "3"},
        ]
    }
    assert from_json_obj(obj) == f

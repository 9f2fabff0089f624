from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blglue.errors import MixedRings, NotAUnit, SchemaError
from blglue.ring import (DualExtension, IntegersMod, Nilpotent, Other, PrimeField, Rationals, Unit,
                         classify_element, ring_arith, ring_from_json)

RINGS = [
    Rationals(),
    PrimeField(5),
    IntegersMod(8),
    IntegersMod(6),
    IntegersMod(36),
    DualExtension(PrimeField(2), 2),
    DualExtension(IntegersMod(9), 3),
    DualExtension(IntegersMod(12), 2),
]


def _all_elements(ring):
    if isinstance(ring, DualExtension):
        base = list(_all_elements(ring.base))
        return [tuple(t) for t in itertools.product(base, repeat=ring.k)]
    return list(range(ring.m))


def test_ring_arith_examples():
    z8 = IntegersMod(8)
    assert z8(3) * z8(3) == z8(1)
    d = DualExtension(PrimeField(2), 2)
    one_eps = d([1, 1])
    assert one_eps * one_eps == d(1)
    q = Rationals()
    assert q("1/2") + q("1/3") == q("5/6")
    assert ring_arith(q("1/2"), q("1/3"), "add").value == Fraction(5, 6)


def test_mixed_rings_rejected():
    with pytest.raises(MixedRings):
        IntegersMod(8)(1) + PrimeField(5)(1)
    with pytest.raises(MixedRings):
        ring_arith(IntegersMod(8)(1), IntegersMod(9)(1), "mul")


def test_classify_examples():
    z8 = IntegersMod(8)
    assert classify_element(z8(2)) == Nilpotent(3)
    c = classify_element(z8(3))
    assert isinstance(c, Unit) and c.inverse == z8(3)
    assert isinstance(classify_element(IntegersMod(6)(2)), Other)


def test_inv_of_nonunit_raises():
    with pytest.raises(NotAUnit):
        IntegersMod(8).inv(2)
    with pytest.raises(NotAUnit):
        DualExtension(PrimeField(2), 2).inv((0, 1))


@pytest.mark.parametrize("ring", [r for r in RINGS if not isinstance(r, Rationals)], ids=str)
def test_classification_matches_brute_force(ring):
    elems = _all_elements(ring)
    for a in elems:
        units = [b for b in elems if ring.mul(a, b) == ring.one]
        powers = [ring.pow(a, i) for i in range(1, ring.nilradical_exponent + 2)]
        nil_index = next((i + 1 for i, p in enumerate(powers) if ring.is_zero(p)), None)
        c = ring.classify(a)
        if units:
            assert c == Unit(units[0])
        elif nil_index is not None:
            assert c == Nilpotent(nil_index)
        else:
            assert isinstance(c, Other)


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_classification_sound_on_random_elements(ring):
    rng = random.Random(f"classify:{ring}")
    for _ in range(1000):
        a = ring.random_element(rng)
        c = ring.classify(a)
        if isinstance(c, Unit):
            assert ring.mul(a, c.inverse) == ring.one
        elif isinstance(c, Nilpotent):
            assert ring.is_zero(ring.pow(a, c.index))
            assert c.index == 1 or not ring.is_zero(ring.pow(a, c.index - 1))
        else:
            assert not ring.local_artinian


@pytest.mark.parametrize("ring", [r for r in RINGS if r.local_artinian], ids=str)
def test_local_rings_never_other(ring):
    for a in _all_elements(ring) if not isinstance(ring, Rationals) else []:
        assert not isinstance(ring.classify(a), Other)


def test_nilradical_exponent():
    assert IntegersMod(8).nilradical_exponent == 3
    assert IntegersMod(72).nilradical_exponent == 3
    assert DualExtension(PrimeField(2), 2).nilradical_exponent == 2
    assert DualExtension(IntegersMod(9), 3).nilradical_exponent == 4
    assert PrimeField(7).nilradical_exponent == 1


def test_descriptor_json_roundtrip():
    for ring in RINGS:
        assert ring_from_json(ring.to_json()) == ring
    with pytest.raises(SchemaError):
        ring_from_json({"type": "GF", "q": 4})
    with pytest.raises(SchemaError):
        PrimeField(6)


def test_crt_components_roundtrip():
    ring = DualExtension(IntegersMod(12), 2)
    for a in _all_elements(ring)[:200]:
        assert ring.lift(ring.project(a)) == a


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_poly_mul_matches_schoolbook(ring):
    rng = random.Random(f"poly:{ring}")
    for _ in range(50):
        a = [ring.random_element(rng) for _ in range(rng.randint(1, 25))]
        b = [ring.random_element(rng) for _ in range(rng.randint(1, 25))]
        naive = [ring.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                naive[i + j] = ring.add(naive[i + j], ring.mul(x, y))
        assert ring.poly_mul(a, b) == naive


def test_poly_mul_large_modulus():
    ring = IntegersMod(10**12 + 39)
    rng = random.Random(3)
    a = [ring.random_element(rng) for _ in range(40)]
    b = [ring.random_element(rng) for _ in range(40)]
    c = ring.poly_mul(a, b)
    assert c[10] == sum(a[i] * b[10 - i] for i in range(11)) % ring.m


def _elements(ring):
    if isinstance(ring, Rationals):
        return st.fractions(max_denominator=50).map(lambda f: f.limit_denominator(50))
    return st.randoms(use_true_random=False).map(ring.random_element)


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_ring_axioms(ring):
    @settings(max_examples=60, deadline=None)
    @given(_elements(ring), _elements(ring), _elements(ring))
    def check(a, b, c):
        add, mul = ring.add, ring.mul
        assert add(a, b) == add(b, a)
        assert mul(a, b) == mul(b, a)
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert add(add(a, b), c) == add(a, add(b, c))
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
        assert add(a, ring.neg(a)) == ring.zero
        assert mul(a, ring.one) == a

    check()


def test_element_codec():
    d = DualExtension(IntegersMod(9), 3)
    assert d.encode(d.decode([1, 2, 3])) == [1, 2, 3]
    q = Rationals()
    assert q.decode("-3/4") == Fraction(-3, 4)
    assert q.encode(Fraction(-3, 4)) == "-3/4"

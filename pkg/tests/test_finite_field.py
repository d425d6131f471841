import pytest
from hypothesis import given, strategies as st

from lambda_lab.finite_field import (
    FieldSpec,
    add,
    frobenius_fixed,
    inv,
    is_irreducible,
    mul,
    parse_field,
)
from frozen import FROZEN

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64]


def test_gf4_generator_squared():
    F = parse_field("2^2")
    t = F.gen
    assert list((t * t).coeffs) == FROZEN["gf4_t_times_t"]
    assert list(t.inverse().coeffs) == FROZEN["gf4_inv_t"]


def test_gf9_generator_squared():
    F = parse_field("3^2")
    assert list((F.gen * F.gen).coeffs) == FROZEN["gf9_t_times_t"]


def test_gf5_frobenius():
    assert frobenius_fixed(parse_field(5)) == FROZEN["gf5_frobenius"]


@pytest.mark.parametrize("text,q", [("2", 2), ("3^2", 9), ("4", 4), ("2^6", 64), ("49", 49)])
def test_parse_field_orders(text, q):
    assert parse_field(text).q == q


@pytest.mark.parametrize("bad", ["6", "1", "0", "128", "4^2", "x", "2^"])
def test_parse_field_rejects(bad):
    with pytest.raises(ValueError):
        parse_field(bad)


@pytest.mark.parametrize("q", ORDERS)
def test_builtin_modulus_is_irreducible(q):
    F = FieldSpec.of_order(q)
    if F.k > 1:
        assert is_irreducible(F.modulus, F.p)


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms_exhaustive(q):
    F = FieldSpec.of_order(q)
    els = list(F.elements())
    assert len(els) == q
    for a in els:
        assert a + F.zero == a and a * F.one == a
        if a != F.zero:
            assert a * inv(a) == F.one
    assert frobenius_fixed(F)


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        add(parse_field(2).one, parse_field(3).one)


def _triples(q):
    F = FieldSpec.of_order(q)
    el = st.integers(0, q - 1).map(F.element)
    return st.tuples(el, el, el)


@given(st.sampled_from(ORDERS).flatmap(_triples))
def test_ring_laws(t):
    a, b, c = t
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert add(a, b) == add(b, a) and mul(a, b) == mul(b, a)


@given(st.sampled_from(ORDERS).flatmap(_triples))
def test_power_q_is_identity(t):
    a = t[0]
    r = a.spec.one
    for _ in range(a.spec.q):
        r = r * a
    assert r == a

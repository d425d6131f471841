import pytest
from hypothesis import given, strategies as st

from lambda_lab.errors import PreconditionError
from lambda_lab.powerset_ring import (
    PowersetRing,
    all_maps,
    check_char_naturality,
    check_ring_axioms,
    split_disjoint_union,
    split_symmetric_difference,
    tensor_intersection,
    corollary_suite,
    from_char_function,
    powerset_functor,
    to_char_function,
)
from frozen import FROZEN

P4 = PowersetRing(tuple("abcd"))
subsets = st.integers(0, 15).map(lambda b: P4.set(x for i, x in enumerate(P4.universe) if b >> i & 1))


def test_ring_axioms_exhaustive():
    assert check_ring_axioms(PowersetRing(tuple("abc")))


def test_char_function_is_iso_exhaustive():
    ok = True
    for A in P4:
        for B in P4:
            ok &= to_char_function(A + B) == to_char_function(A) + to_char_function(B)
            ok &= to_char_function(A * B) == to_char_function(A) * to_char_function(B)
        ok &= from_char_function(to_char_function(A), P4) == A
    assert ok == FROZEN["chi_exhaustive_4"]


def test_preimage():
    X, Y = PowersetRing(("1", "2", "3")), PowersetRing(("a", "b"))
    Pf = powerset_functor({"1": "a", "2": "a", "3": "b"}, X, Y)
    got = Pf(Y.set(["a"])).members()
    assert sorted(int(x) for x in got) == FROZEN["preimage_of_a"]


def test_preimage_requires_total_map():
    X, Y = PowersetRing(("1", "2")), PowersetRing(("a",))
    with pytest.raises(PreconditionError):
        powerset_functor({"1": "a"}, X, Y)


def test_parse_and_brace_errors():
    assert P4.parse("{a, c}") == P4.set("ac")
    assert P4.parse("{}") == P4.zero
    with pytest.raises(ValueError):
        P4.parse("a,c")
    with pytest.raises(KeyError):
        P4.parse("{z}")


def test_disjoint_union_requires_disjoint():
    with pytest.raises(PreconditionError):
        split_disjoint_union(P4.set("ab"), P4.set("bc"))
    assert split_disjoint_union(P4.set("ab"), P4.set("cd")).check.is_iso


def test_split_symmetric_difference():
    w, same = split_symmetric_difference(P4.set("abc"), P4.set("bd"))
    assert same and w.check.is_iso


@pytest.mark.parametrize(
    "a,b,key",
    [("ab", "ab", "tensor_f2_ab_ab_over_ab"), ("ab", "bc", "tensor_f2_ab_bc"), ("a", "b", "tensor_f2_disjoint")],
)
def test_tensor_intersection_sizes(a, b, key):
    P = PowersetRing(tuple(sorted(set(a) | set(b))))
    structural, cmp = tensor_intersection(P.set(a), P.set(b))
    assert structural
    assert cmp.is_iso
    assert cmp.oracle_order == FROZEN[key]


@given(subsets, subsets)
def test_powerset_consequences_never_fail(a, b):
    recs = corollary_suite(a, b)
    assert recs and all(r.verdict in ("pass", "partial") for r in recs)


@given(subsets, subsets, subsets)
def test_ring_laws(a, b, c):
    assert a + a == P4.zero
    assert a * a == a
    assert a * (b + c) == a * b + a * c
    assert a.complement() == P4.one + a


def test_functor_laws():
    X, Y = PowersetRing(("1", "2")), PowersetRing(("a", "b", "c"))
    for f in all_maps(X.universe, Y.universe):
        Pf = powerset_functor(f, X, Y)
        for A in Y:
            for B in Y:
                assert Pf(A + B) == Pf(A) + Pf(B) and Pf(A * B) == Pf(A) * Pf(B)
        assert Pf(Y.one) == X.one


def test_char_naturality():
    assert check_char_naturality(3)

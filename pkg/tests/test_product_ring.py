import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lambda_lab.errors import PreconditionError, RingMismatchError
from lambda_lab.product_ring import (
    IndexSet,
    check_code_morphism,
    check_maximal_generator,
    generated_ideal,
    maximal_ideal,
    multiples_oracle,
    principal_ideal,
    quotient_by,
    split_disjoint,
)
from frozen import FROZEN

FIELD_CHOICES = ["2", "3", "4"]


def rings(max_points=3):
    return st.lists(st.sampled_from(FIELD_CHOICES), min_size=1, max_size=max_points).map(
        lambda fs: IndexSet.of("abcd"[: len(fs)], fs)
    )


def ring_and_elems(n=2):
    return rings().flatmap(
        lambda R: st.tuples(st.just(R), *[st.integers(0, R.order - 1).map(R.from_index) for _ in range(n)])
    )


def test_sum_support():
    R = IndexSet.of("ab", 3)
    s = R.element([1, 1]) + R.element([1, 2])
    assert list(s.values) == FROZEN["f3_sum_11_12"]
    assert s.support() == {R.labels[i] for i in FROZEN["f3_sum_11_12_support"]}


def test_inverse_of_21():
    R = IndexSet.of("ab", 3)
    f = R.element([2, 1])
    assert f.is_unit()
    assert list(f.inverse().values) == FROZEN["f3_inverse_21"]


def test_non_unit_has_no_inverse():
    R = IndexSet.of("ab", 3)
    f = R.element([2, 0])
    assert not f.is_unit()
    with pytest.raises(ZeroDivisionError):
        f.inverse()


def test_principal_ideal_listing():
    R = IndexSet.of("ab", 2)
    I = principal_ideal(R.element([1, 0]))
    got = sorted(list(h.values) for h in I.elements())
    assert got == FROZEN["f2_ideal_of_10"]


def test_quotient_cardinality():
    R = IndexSet.of("abc", ["2", "3", "4"])
    target, proj = quotient_by(R.delta("a"))
    assert target.order == FROZEN["quotient_abc_by_a"]
    assert check_code_morphism(R, target, proj.apply_codes).is_morphism


def test_disjoint_split_27():
    R = IndexSet.of("abc", 3)
    sp = split_disjoint(R.delta("a"), R.element([0, 1, 2]))
    assert [sp.union.order, sp.pair_ring.order] == FROZEN["split_f3_a_bc"]
    assert sp.check.is_iso


def test_split_overlap_rejected():
    R = IndexSet.of("abc", 3)
    with pytest.raises(PreconditionError):
        split_disjoint(R.element([1, 1, 0]), R.element([0, 1, 0]))


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        IndexSet.of("ab", 2).one + IndexSet.of("ab", 3).one


@pytest.mark.parametrize("fields", [("2", "3"), ("4", "4", "2"), ("3", "3", "3")])
def test_support_ideal_matches_multiples_exhaustive(fields):
    R = IndexSet.of("abc"[: len(fields)], fields)
    for f in R.elements():
        I = principal_ideal(f)
        assert np.array_equal(I.mask(), multiples_oracle(f))
        for h in I.elements():
            assert I.witness(h) * f == h


@pytest.mark.parametrize("fields", [("2", "2"), ("3", "4"), ("2", "3", "4")])
def test_maximal_ideals_generated_by_one_minus_delta(fields):
    R = IndexSet.of("abc"[: len(fields)], fields)
    for x in R.labels:
        M = maximal_ideal(R, x)
        assert M.support == R.label_set - {x}
        assert check_maximal_generator(R, x)


def test_generated_ideal_is_union_of_supports():
    R = IndexSet.of("abc", 2)
    I = generated_ideal(R, [R.delta("a"), R.delta("c")])
    assert I.support == {"a", "c"}


@given(ring_and_elems(3))
def test_ring_laws(t):
    R, a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * R.one == a and a + R.zero == a


@given(ring_and_elems(2))
def test_support_of_product_is_intersection(t):
    _, a, b = t
    assert (a * b).support() == a.support() & b.support()


@given(ring_and_elems(1))
def test_unit_iff_full_support(t):
    R, a = t
    assert a.is_unit() == (a.support() == R.label_set)
    brute = any((a * R.from_index(i)) == R.one for i in range(R.order))
    assert brute == a.is_unit()


@given(ring_and_elems(2))
def test_membership_predicate(t):
    _, f, h = t
    I = principal_ideal(f)
    assert (h in I) == bool(multiples_oracle(f)[h.index])


@given(ring_and_elems(1))
def test_pseudo_inverse(t):
    _, f = t
    g = f.pseudo_inverse()
    assert f * g * f == f
    assert (f * g).support() == f.support()


@settings(max_examples=30)
@given(rings(3))
def test_encode_decode_roundtrip(R):
    idx = np.arange(R.order)
    assert np.array_equal(R.encode(R.decode(idx)), idx)


def test_mutated_projection_is_not_a_morphism():
    R = IndexSet.of("ab", 3)
    target, proj = quotient_by(R.delta("a"))

    def wrong(codes):
        out = proj.apply_codes(codes).copy()
        out[..., 0] = (out[..., 0] * 2) % 3  # scale by 2: additive but not unital
        return out

    chk = check_code_morphism(R, target, wrong)
    assert not chk.is_morphism

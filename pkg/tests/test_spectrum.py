import pytest
from hypothesis import given, settings, strategies as st

from lambda_lab.errors import PreconditionError, SizeLimitError
from lambda_lab.product_ring import IndexSet, maximal_ideal, principal_ideal
from lambda_lab.spectrum import (
    basic_open,
    enumerate_ideals,
    finiteness_suite,
    in_radical_of_principal,
    longest_chain,
    oracle_basic_open,
    residue_field,
)
from frozen import FROZEN


def test_two_point_f2_counts():
    o = enumerate_ideals(IndexSet.of("ab", 2))
    assert len(o.ideals) == FROZEN["f2_ab_ideals"]
    assert len(o.primes) == FROZEN["f2_ab_primes"]


def test_two_point_f3_maximals():
    o = enumerate_ideals(IndexSet.of("ab", 3))
    assert len(o.maximals) == FROZEN["f3_ab_maximals"]


def test_residue_field_f4():
    R = IndexSet.of("abc", 4)
    w = residue_field(R, maximal_ideal(R, "b"))
    assert w.cosets == FROZEN["residue_f4_abc_at_b"] and w.ok


def test_residue_field_rejects_mixed_and_non_maximal():
    with pytest.raises(PreconditionError):
        residue_field(IndexSet.of("ab", ["2", "3"]), 0)
    R = IndexSet.of("abc", 2)
    with pytest.raises(PreconditionError):
        residue_field(R, principal_ideal(R.delta("a")))


@pytest.mark.parametrize("fields", [("2",), ("2", "2"), ("3", "2"), ("4", "3"), ("2", "2", "2", "2"), ("2", "3", "2")])
def test_every_ideal_is_a_radical_support_ideal(fields):
    R = IndexSet.of("abcd"[: len(fields)], fields)
    o = enumerate_ideals(R)
    assert len(o.ideals) == 2 ** len(R.labels)
    for m in o.ideals:
        assert o.radical(m) == m
        assert o.as_support_ideal(m) is not None
    expected = sorted(o.mask_of(maximal_ideal(R, x)) for x in R.labels)
    assert sorted(o.primes) == sorted(o.maximals) == expected


def test_closure_method_agrees_with_subsets():
    R = IndexSet.of("ab", ["2", "3"])
    a, b = enumerate_ideals(R, "subsets"), enumerate_ideals(R, "closure")
    assert sorted(a.ideals) == sorted(b.ideals)


def test_subset_method_size_limit():
    with pytest.raises(SizeLimitError):
        enumerate_ideals(IndexSet.of("abc", 4), "subsets")


def test_chain_length_and_finiteness_records():
    R = IndexSet.of("abc", 2)
    o = enumerate_ideals(R)
    assert longest_chain(o.ideals) == 4
    recs = finiteness_suite(R)
    assert all(r.verdict != "fail" for r in recs)
    assert any(r.verdict == "pass" for r in recs)
    assert all(r.verdict == "partial" for r in finiteness_suite(R, "infinite"))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([("2", "3"), ("3", "3"), ("2", "2", "2")]).flatmap(
    lambda fs: st.tuples(st.just(IndexSet.of("abc"[: len(fs)], fs)), st.integers(0, 26), st.integers(0, 26))
))
def test_basic_open_and_radical_membership(t):
    R, i, j = t
    f, g = R.from_index(i % R.order), R.from_index(j % R.order)
    o = enumerate_ideals(R)
    pts = {x for x in R.labels if o.mask_of(maximal_ideal(R, x)) in oracle_basic_open(f, o)}
    assert pts == basic_open(f).points
    assert in_radical_of_principal(f, g, o) == (f.support() <= g.support())


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_residue_fields_constant(q):
    R = IndexSet.of("ab", str(q))
    o = enumerate_ideals(R)
    for m in o.maximals:
        assert residue_field(R, m).ok

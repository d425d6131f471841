"""The Boolean ring of subsets of a finite universe.

Subsets are machine-word bitsets: addition is XOR (symmetric difference) and
multiplication is AND (intersection).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping

from .errors import PreconditionError, RingMismatchError
from .finite_field import GF2
from .product_ring import IndexSet, ProdElem

MAX_UNIVERSE = 64


@dataclass(frozen=True)
class PowersetRing:
    universe: tuple[str, ...]

    def __post_init__(self):
        u = tuple(str(x) for x in self.universe)
        if len(set(u)) != len(u):
            raise ValueError("duplicate labels")
        if len(u) > MAX_UNIVERSE:
            raise ValueError(f"universe larger than {MAX_UNIVERSE}")
        object.__setattr__(self, "universe", u)

    @cached_property
    def _bit(self) -> dict[str, int]:
        return {x: 1 << i for i, x in enumerate(self.universe)}

    @property
    def full_mask(self) -> int:
        return (1 << len(self.universe)) - 1

    def set(self, members: Iterable[str] = ()) -> SetElem:
        bits = 0
        for x in members:
            try:
                bits |= self._bit[x]
            except KeyError:
                raise KeyError(f"{x!r} is not in the universe") from None
        return SetElem(self, bits)

    __call__ = set

    def parse(self, text: str) -> SetElem:
        """Parse a brace list such as ``"{a,c}"``."""
        m = re.fullmatch(r"\s*\{(.*)\}\s*", text)
        if not m:
            raise ValueError(f"expected a brace list, got {text!r}")
        body = m.group(1).strip()
        return self.set([s.strip() for s in body.split(",")] if body else [])

    @property
    def zero(self) -> SetElem:
        return SetElem(self, 0)

    @property
    def one(self) -> SetElem:
        return SetElem(self, self.full_mask)

    def elements(self) -> Iterator[SetElem]:
        return (SetElem(self, b) for b in range(1 << len(self.universe)))

    __iter__ = elements

    @property
    def order(self) -> int:
        return 1 << len(self.universe)

    @cached_property
    def char_ring(self) -> IndexSet:
        """``Fun(X, Z_2)`` as a product ring over the same labels."""
        return IndexSet(self.universe, (GF2,) * len(self.universe), allow_empty=True)


@dataclass(frozen=True)
class SetElem:
    ring: PowersetRing
    bits: int

    def _same(self, other) -> SetElem:
        if not isinstance(other, SetElem):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatchError()
        return other

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return SetElem(self.ring, self.bits ^ other.bits)

    __sub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return SetElem(self.ring, self.bits & other.bits)

    def __or__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return SetElem(self.ring, self.bits | other.bits)

    def complement(self) -> SetElem:
        return SetElem(self.ring, self.ring.full_mask & ~self.bits)

    def minus(self, other: SetElem) -> SetElem:
        return SetElem(self.ring, self.bits & ~self._same(other).bits)

    def members(self) -> frozenset[str]:
        return frozenset(x for x in self.ring.universe if self.bits & self.ring._bit[x])

    def __len__(self):
        return self.bits.bit_count()

    def __le__(self, other: SetElem) -> bool:
        return self.bits & ~other.bits == 0

    def __bool__(self):
        return self.bits != 0

    def __repr__(self):
        return "{" + ",".join(x for x in self.ring.universe if self.bits & self.ring._bit[x]) + "}"


def sym_add(a: SetElem, b: SetElem) -> SetElem:
    return a + b


def meet(a: SetElem, b: SetElem) -> SetElem:
    return a * b


def to_char_function(a: SetElem) -> ProdElem:
    """The indicator sequence of ``a`` in ``∏_x F_2``."""
    return ProdElem(a.ring.char_ring, tuple((a.bits >> i) & 1 for i in range(len(a.ring.universe))))


def from_char_function(f: ProdElem, ring: PowersetRing) -> SetElem:
    if f.ring != ring.char_ring:
        raise RingMismatchError()
    return ring.set(f.support())


def fin_ideal_member(a: SetElem, bound: int | None = None) -> bool:
    """Membership in the ideal of finite subsets, read as ``|A| ≤ bound``.

    On a finite universe every subset is finite, so with the default bound
    (the universe size) this is always true.
    """
    bound = len(a.ring.universe) if bound is None else bound
    return len(a) <= bound


@dataclass(frozen=True)
class PreimageMorphism:
    """``P(f): P(Y) → P(X)``, ``A ↦ f⁻¹(A)``, for ``f: X → Y``."""

    source: PowersetRing  # P(Y)
    target: PowersetRing  # P(X)
    mapping: tuple[tuple[str, str], ...]

    @cached_property
    def _table(self) -> dict[str, int]:
        # For each y, the bitmask of its fibre in X.
        fib = {y: 0 for y in self.source.universe}
        for x, y in self.mapping:
            fib[y] |= self.target._bit[x]
        return fib

    def __call__(self, a: SetElem) -> SetElem:
        if a.ring != self.source:
            raise RingMismatchError()
        bits = 0
        for y in a.members():
            bits |= self._table[y]
        return SetElem(self.target, bits)


def powerset_functor(f: Mapping[str, str], X: PowersetRing, Y: PowersetRing) -> PreimageMorphism:
    missing = set(X.universe) - set(f)
    if missing:
        raise PreconditionError(f"map undefined on {sorted(missing)}")
    bad = {f[x] for x in X.universe} - set(Y.universe)
    if bad:
        raise PreconditionError(f"values {sorted(bad)} are not in the codomain")
    return PreimageMorphism(Y, X, tuple((x, f[x]) for x in X.universe))


def all_maps(X: Iterable[str], Y: Iterable[str]) -> Iterator[dict[str, str]]:
    X, Y = list(X), list(Y)
    for values in itertools.product(Y, repeat=len(X)):
        yield dict(zip(X, values))


def is_ring_morphism(
    phi: Callable, source_elems: list, one_src, one_tgt
) -> bool:
    """Additive, multiplicative and unital on every pair of the given elements."""
    if phi(one_src) != one_tgt:
        return False
    images = [phi(a) for a in source_elems]
    for a, fa in zip(source_elems, images):
        for b, fb in zip(source_elems, images):
            if phi(a + b) != fa + fb or phi(a * b) != fa * fb:
                return False
    return True


def check_ring_axioms(ring: PowersetRing, elems: list[SetElem] | None = None) -> bool:
    """Commutative-ring axioms over all triples of ``elems`` (default: the whole ring)."""
    elems = list(ring.elements()) if elems is None else elems
    zero, one = ring.zero, ring.one
    for a in elems:
        if a + zero != a or a * one != a or a + a != zero or a * a != a:
            return False
        for b in elems:
            if a + b != b + a or a * b != b * a:
                return False
            for c in elems:
                if (a + b) + c != a + (b + c) or (a * b) * c != a * (b * c):
                    return False
                if a * (b + c) != a * b + a * c:
                    return False
    return True


# -- consequences for power sets ---------------------------------------------


def _split(left: SetElem, right: SetElem):
    from .product_ring import split_disjoint

    return split_disjoint(to_char_function(left), to_char_function(right))


def split_disjoint_union(a: SetElem, b: SetElem):
    """``P(A ∪ B) ≅ P(A) × P(B)`` for disjoint ``A``, ``B``; returns the split witness."""
    if a * b:
        raise PreconditionError("A and B must be disjoint")
    return _split(a, b)


def split_symmetric_difference(a: SetElem, b: SetElem):
    """``P(A + B) ≅ P(A ∖ B) × P(B ∖ A)``."""
    w = _split(a.minus(b), b.minus(a))
    return w, w.union.label_set == (a + b).members()


def tensor_intersection(a: SetElem, b: SetElem, *, oracle_limit: int = 256):
    """``P(A) ⊗_R P(B) ≅ P(A ∩ B)`` structurally, and against the presented tensor when small."""
    from .tensor_local import QuotAlgebra, compare_tensor, tensor

    base = a.ring.char_ring
    A = QuotAlgebra.surviving(base, a.members())
    B = QuotAlgebra.surviving(base, b.members())
    structural = tensor(A, B).survivors == (a * b).members()
    cmp = None
    if A.ring.order * B.ring.order <= oracle_limit:
        cmp = compare_tensor(A, B)
    return structural, cmp


def corollary_suite(a: SetElem, b: SetElem) -> list:
    """Check the four power-set consequences of the product-ring proposition for ``A``, ``B``."""
    from .ev_periodic import EvPeriodic, mod_finite_equal
    from .report import record

    if a.ring != b.ring:
        raise RingMismatchError()
    anchor = "powerset-corollary"
    inst = f"X={a.ring.universe!r}, A={a!r}, B={b!r}".replace("'", "")
    out = []
    if not a * b:
        w = split_disjoint_union(a, b)
        out.append(record("powerset.disjoint-union", anchor, inst, w.check.is_iso,
                          detail=f"|P(A∪B)| = {w.union.order} = {w.left.order}·{w.right.order}"))
    w = _split(a, a.complement())
    out.append(record("powerset.complement-split", anchor, inst, w.check.is_iso,
                      detail="P(X) ≅ P(A) × P(A^c)"))
    w, same = split_symmetric_difference(a, b)
    out.append(record("powerset.symmetric-difference", anchor, inst, w.check.is_iso and same))
    for label, other in (("tensor-intersection", b), ("tensor-complement", a.complement())):
        structural, cmp = tensor_intersection(a, other)
        ok = structural and (cmp is None or cmp.is_iso)
        detail = "structural only" if cmp is None else f"presented tensor has {cmp.oracle_order} elements"
        out.append(record(f"powerset.{label}", anchor, inst, ok, detail=detail))
    # On a finite universe Fin(X) = P(X), so both sides are the zero ring.
    out.append(record("powerset.finite-quotient", anchor, inst,
                      fin_ideal_member(a) and all(fin_ideal_member(s) for s in a.ring.elements()) if len(a.ring.universe) <= 12 else fin_ideal_member(a),
                      detail="Fin(X) is all of P(X), both sides are zero"))
    # Periodic-model shadow: for finite A, 1 ≡ 1 − χ_A mod finite support, so the tensor vanishes.
    one = EvPeriodic.constant(2, 1)
    chi = EvPeriodic(one.field, tuple([1] * len(a)), (0,))
    vanishes = mod_finite_equal(one, one - chi)
    infinite = EvPeriodic.periodic(2, (1, 0))
    survives = not mod_finite_equal(one, one - infinite)
    out.append(record("powerset.finite-quotient-periodic", anchor, inst,
                      "partial" if vanishes and survives else False,
                      detail="finite A kills the tensor; an infinite periodic A does not (model check)"))
    return out


def check_char_naturality(max_size: int = 3) -> bool:
    """``χ ∘ P(f) = Fun(f) ∘ χ`` for every map between sets of size ≤ ``max_size``."""
    from .scheme_functor import fun_functor

    sets = [tuple(f"p{i}" for i in range(n)) for n in range(1, max_size + 1)]
    for X in sets:
        for Y in sets:
            PX, PY = PowersetRing(X), PowersetRing(Y)
            for f in all_maps(X, Y):
                P = powerset_functor(f, PX, PY)
                F = fun_functor(f, X, Y, GF2)
                for s in PY.elements():
                    if to_char_function(P(s)).array.tolist() != F.apply_codes(to_char_function(s).array).tolist():
                        return False
    return True

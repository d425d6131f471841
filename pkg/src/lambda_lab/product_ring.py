"""The product ring of finitely many finite fields, indexed by point labels.

An element is a tuple of field-element codes, one per label.  Every ring
element also has an integer *index* (mixed-radix encoding of its codes), so
whole rings can be enumerated as a single ``(order, n)`` numpy array and
arithmetic can be vectorised over many elements at once.

Ideals are represented by their support set: for a finite product of fields
every ideal has the form ``{h : Su(h) ⊆ S}``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import PreconditionError, RingMismatchError
from .finite_field import FieldElem, FieldSpec, parse_field

EXHAUSTIVE_LIMIT = 4096
SAMPLE_SIZE = 1000


@dataclass(frozen=True)
class IndexSet:
    """A finite index set with a finite field attached to every point.

    Doubles as the ring ``Λ = ∏ K_x`` it describes.
    """

    labels: tuple[str, ...]
    fields: tuple[FieldSpec, ...]
    allow_empty: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        fields = tuple(parse_field(f) for f in self.fields)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "fields", fields)
        if not labels and not self.allow_empty:
            raise ValueError("index set must be nonempty")
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate labels")
        if len(fields) != len(labels):
            raise ValueError("every label needs a field")

    @classmethod
    def of(cls, labels: Iterable, fields) -> IndexSet:
        """Build from labels and either one field for all points or one per point."""
        labels = tuple(labels)
        if isinstance(fields, (FieldSpec, str, int)):
            fields = [fields] * len(labels)
        return cls(labels, tuple(fields))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, object]]) -> IndexSet:
        pairs = list(pairs)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    def sub(self, subset: Iterable[str]) -> IndexSet:
        """The product over ``subset`` (kept in this ring's label order); may be empty."""
        keep = set(subset)
        unknown = keep - set(self.labels)
        if unknown:
            raise KeyError(f"unknown labels {sorted(unknown)}")
        pairs = [(x, k) for x, k in zip(self.labels, self.fields) if x in keep]
        return IndexSet(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), allow_empty=True)

    # -- basic data -----------------------------------------------------

    def __len__(self):
        return len(self.labels)

    def field_of(self, x: str) -> FieldSpec:
        return self.fields[self.position(x)]

    def position(self, x: str) -> int:
        try:
            return self._pos[x]
        except KeyError:
            raise KeyError(f"unknown label {x!r}") from None

    @cached_property
    def _pos(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.labels)}

    @cached_property
    def radices(self) -> np.ndarray:
        return np.array([k.q for k in self.fields], dtype=np.int64)

    @property
    def order(self) -> int:
        return math.prod(k.q for k in self.fields)

    @property
    def label_set(self) -> frozenset[str]:
        return frozenset(self.labels)

    @property
    def is_zero_ring(self) -> bool:
        return not self.labels

    def describe(self) -> str:
        return "{" + ",".join(f"{x}:{k.name}" for x, k in zip(self.labels, self.fields)) + "}"

    # -- vectorised arithmetic on code arrays ---------------------------

    @cached_property
    def _tables(self):
        n = len(self.labels)
        qmax = max([k.q for k in self.fields], default=1)
        add = np.zeros((n, qmax, qmax), dtype=np.int64)
        mul = np.zeros((n, qmax, qmax), dtype=np.int64)
        neg = np.zeros((n, qmax), dtype=np.int64)
        for i, k in enumerate(self.fields):
            a, m, ng, _ = k.tables
            add[i, : k.q, : k.q] = a
            mul[i, : k.q, : k.q] = m
            neg[i, : k.q] = ng
        return np.arange(n), add, mul, neg

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        ar, add, _, _ = self._tables
        return add[ar, a, b]

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        ar, _, mul, _ = self._tables
        return mul[ar, a, b]

    def vneg(self, a: np.ndarray) -> np.ndarray:
        ar, _, _, neg = self._tables
        return neg[ar, a]

    def vsub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    @cached_property
    def _place(self) -> np.ndarray:
        place = np.ones(len(self.labels), dtype=np.int64)
        for i in range(1, len(self.labels)):
            place[i] = place[i - 1] * self.fields[i - 1].q
        return place

    def encode(self, codes: np.ndarray) -> np.ndarray:
        """Mixed-radix index of each row of ``codes`` (first label varies fastest)."""
        return np.asarray(codes, dtype=np.int64) @ self._place

    def decode(self, index) -> np.ndarray:
        index = np.asarray(index, dtype=np.int64)
        return (index[..., None] // self._place) % self.radices

    @cached_property
    def codes(self) -> np.ndarray:
        """All elements as an ``(order, n)`` array; row ``i`` has index ``i``."""
        if self.order > 1 << 22:
            raise PreconditionError(f"ring of order {self.order} is too large to enumerate")
        out = self.decode(np.arange(self.order))
        out.setflags(write=False)
        return out

    def random_codes(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if not self.labels:
            return np.zeros((size, 0), dtype=np.int64)
        return rng.integers(0, self.radices, size=(size, len(self.labels)))

    # -- elements -------------------------------------------------------

    def element(self, values) -> ProdElem:
        """Element from a label→value mapping or a sequence in label order.

        Values may be :class:`FieldElem`, integer codes or coefficient lists.
        """
        if isinstance(values, Mapping):
            missing = set(self.labels) - set(values)
            if missing:
                raise ValueError(f"coordinates missing for {sorted(missing)}")
            values = [values[x] for x in self.labels]
        values = list(values)
        if len(values) != len(self.labels):
            raise ValueError("wrong number of coordinates")
        return ProdElem(self, tuple(k.element(v).value for k, v in zip(self.fields, values)))

    __call__ = element

    def from_codes(self, codes) -> ProdElem:
        return ProdElem(self, tuple(int(c) for c in codes))

    def from_index(self, index: int) -> ProdElem:
        return self.from_codes(self.decode(index))

    @property
    def zero(self) -> ProdElem:
        return ProdElem(self, (0,) * len(self.labels))

    @property
    def one(self) -> ProdElem:
        return ProdElem(self, (1,) * len(self.labels))

    def constant(self, value: int) -> ProdElem:
        return self.element([value] * len(self.labels))

    def delta(self, x: str) -> ProdElem:
        """The Kronecker delta: 1 at ``x``, 0 elsewhere."""
        i = self.position(x)
        return ProdElem(self, tuple(1 if j == i else 0 for j in range(len(self.labels))))

    def idempotent(self, subset: Iterable[str]) -> ProdElem:
        """Indicator idempotent ``e_S``: 1 on ``subset``, 0 elsewhere."""
        s = frozenset(subset)
        for x in s:
            self.position(x)
        return ProdElem(self, tuple(1 if x in s else 0 for x in self.labels))

    def elements(self) -> Iterator[ProdElem]:
        """All elements, in index order."""
        for row in self.codes:
            yield ProdElem(self, tuple(int(c) for c in row))

    __iter__ = elements

    def subsets(self) -> Iterator[frozenset[str]]:
        for r in range(len(self.labels) + 1):
            for combo in itertools.combinations(self.labels, r):
                yield frozenset(combo)


@dataclass(frozen=True)
class ProdElem:
    """An element ``f = (f_x)`` of a product ring."""

    ring: IndexSet
    values: tuple[int, ...]

    @property
    def coords(self) -> dict[str, FieldElem]:
        return {x: FieldElem(k, v) for x, k, v in zip(self.ring.labels, self.ring.fields, self.values)}

    def __getitem__(self, x: str) -> FieldElem:
        i = self.ring.position(x)
        return FieldElem(self.ring.fields[i], self.values[i])

    @property
    def array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.int64)

    @property
    def index(self) -> int:
        return int(self.ring.encode(self.array)) if self.values else 0

    def _same(self, other) -> ProdElem:
        if not isinstance(other, ProdElem):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatchError()
        return other

    def _wrap(self, arr) -> ProdElem:
        return ProdElem(self.ring, tuple(int(c) for c in arr))

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.ring.vadd(self.array, other.array))

    def __sub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.ring.vsub(self.array, other.array))

    def __neg__(self):
        return self._wrap(self.ring.vneg(self.array))

    def __mul__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.ring.vmul(self.array, other.array))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def support(self) -> frozenset[str]:
        return frozenset(x for x, v in zip(self.ring.labels, self.values) if v)

    def is_unit(self) -> bool:
        return all(self.values)

    def inverse(self) -> ProdElem:
        if not self.is_unit():
            raise ZeroDivisionError("element is not a unit")
        return self.pseudo_inverse()

    def pseudo_inverse(self) -> ProdElem:
        """Coordinatewise inverse where nonzero, 0 elsewhere."""
        return ProdElem(
            self.ring, tuple(int(k.tables[3][v]) for k, v in zip(self.ring.fields, self.values))
        )

    def restrict(self, subset: Iterable[str]) -> ProdElem:
        """Coordinate projection onto ``subset``."""
        target = self.ring.sub(subset)
        return ProdElem(target, tuple(self.values[self.ring.position(x)] for x in target.labels))

    def __bool__(self):
        return any(self.values)

    def to_json(self) -> dict[str, list[int]]:
        return {x: list(e.coeffs) for x, e in self.coords.items()}

    def __repr__(self):
        inner = ",".join(repr(FieldElem(k, v)) for k, v in zip(self.ring.fields, self.values))
        return f"({inner})"


def support(f: ProdElem) -> frozenset[str]:
    return f.support()


def is_unit(f: ProdElem) -> bool:
    return f.is_unit()


def delta(ring: IndexSet, x: str) -> ProdElem:
    return ring.delta(x)


def support_mask(ring: IndexSet, codes: np.ndarray) -> np.ndarray:
    """Support of each row of ``codes`` as a bitmask over label positions."""
    weights = np.left_shift(1, np.arange(len(ring.labels), dtype=np.int64))
    return (np.asarray(codes) != 0).astype(np.int64) @ weights


def label_mask(ring: IndexSet, subset: Iterable[str]) -> int:
    return sum(1 << ring.position(x) for x in subset)


@dataclass(frozen=True)
class SupportIdeal:
    """The ideal ``{h : Su(h) ⊆ support}`` of a finite product of fields."""

    ring: IndexSet
    support: frozenset[str]
    generator: ProdElem | None = field(default=None, compare=False)

    def __post_init__(self):
        s = frozenset(self.support)
        unknown = s - self.ring.label_set
        if unknown:
            raise KeyError(f"unknown labels {sorted(unknown)}")
        object.__setattr__(self, "support", s)

    def __contains__(self, h: ProdElem) -> bool:
        if h.ring != self.ring:
            raise RingMismatchError()
        return h.support() <= self.support

    @property
    def idempotent(self) -> ProdElem:
        return self.ring.idempotent(self.support)

    def witness(self, h: ProdElem) -> ProdElem:
        """``h'`` with ``h == h' * generator``; exists exactly when ``h`` is a member."""
        f = self.generator if self.generator is not None else self.idempotent
        if h not in self:
            raise PreconditionError(f"{h!r} is not in the ideal")
        vals = []
        for k, hv, fv in zip(self.ring.fields, h.values, f.values):
            vals.append(int(k.tables[1][hv, k.tables[3][fv]]) if hv else 0)
        return ProdElem(self.ring, tuple(vals))

    def mask(self) -> np.ndarray:
        """Boolean membership vector over element indices of the ring."""
        allowed = label_mask(self.ring, self.support)
        return (support_mask(self.ring, self.ring.codes) & ~allowed) == 0

    def elements(self) -> list[ProdElem]:
        return [self.ring.from_index(i) for i in np.flatnonzero(self.mask())]

    @property
    def size(self) -> int:
        return math.prod(self.ring.field_of(x).q for x in self.support)

    def __add__(self, other: SupportIdeal) -> SupportIdeal:
        if other.ring != self.ring:
            raise RingMismatchError()
        return SupportIdeal(self.ring, self.support | other.support)

    def __and__(self, other: SupportIdeal) -> SupportIdeal:
        if other.ring != self.ring:
            raise RingMismatchError()
        return SupportIdeal(self.ring, self.support & other.support)

    def __le__(self, other: SupportIdeal) -> bool:
        return self.support <= other.support

    def radical(self) -> SupportIdeal:
        return self

    @property
    def is_proper(self) -> bool:
        return self.support != self.ring.label_set

    def __repr__(self):
        return f"SupportIdeal({sorted(self.support)})"


def principal_ideal(f: ProdElem) -> SupportIdeal:
    return SupportIdeal(f.ring, f.support(), generator=f)


def generated_ideal(ring: IndexSet, gens: Iterable[ProdElem]) -> SupportIdeal:
    """Ideal generated by several elements; its support is the union of supports."""
    s: frozenset[str] = frozenset()
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError()
        s |= g.support()
    return SupportIdeal(ring, s, generator=ring.idempotent(s))


def ideal_equal(f: ProdElem, g: ProdElem) -> bool:
    if f.ring != g.ring:
        raise RingMismatchError()
    return f.support() == g.support()


def maximal_ideal(ring: IndexSet, x: str) -> SupportIdeal:
    """``m_x = {f : f_x = 0}``, generated by ``1 - Δ_x``."""
    ring.position(x)
    return SupportIdeal(ring, ring.label_set - {x}, generator=ring.one - ring.delta(x))


def check_maximal_generator(ring: IndexSet, x: str) -> bool:
    """Every member ``f`` of ``m_x`` satisfies ``f == f * (1 - Δ_x)``."""
    m = maximal_ideal(ring, x)
    codes = ring.codes[m.mask()]
    return bool(np.array_equal(ring.vmul(codes, m.generator.array), codes))


@dataclass(frozen=True)
class Projection:
    """Coordinate projection from ``source`` onto the sub-product ``target``."""

    source: IndexSet
    target: IndexSet

    @cached_property
    def _cols(self) -> np.ndarray:
        return np.array([self.source.position(x) for x in self.target.labels], dtype=np.int64)

    def __call__(self, h: ProdElem) -> ProdElem:
        if h.ring != self.source:
            raise RingMismatchError()
        return ProdElem(self.target, tuple(h.values[i] for i in self._cols))

    def apply_codes(self, codes: np.ndarray) -> np.ndarray:
        return np.asarray(codes)[..., self._cols]


def quotient_by(f: ProdElem) -> tuple[IndexSet, Projection]:
    """``Λ/(f)`` realised as the product over the complement of ``Su(f)``."""
    target = f.ring.sub(f.ring.label_set - f.support())
    return target, Projection(f.ring, target)


@dataclass
class MorphismCheck:
    """Outcome of checking that a map between product rings is a ring isomorphism."""

    additive: bool
    multiplicative: bool
    unital: bool
    injective: bool
    surjective: bool
    exhaustive: bool
    cases: int

    @property
    def is_morphism(self) -> bool:
        return self.additive and self.multiplicative and self.unital

    @property
    def is_iso(self) -> bool:
        return self.is_morphism and self.injective and self.surjective

    ok = is_iso


def _pairs(n: int, rng: np.random.Generator | None, exhaustive: bool, samples: int):
    if exhaustive:
        idx = np.arange(n)
        for start in range(0, n, max(1, (1 << 20) // max(n, 1))):
            block = idx[start : start + max(1, (1 << 20) // max(n, 1))]
            yield np.repeat(block, n), np.tile(idx, len(block))
    else:
        yield rng.integers(0, n, samples), rng.integers(0, n, samples)


def check_code_morphism(
    source: IndexSet,
    target: IndexSet,
    phi: Callable[[np.ndarray], np.ndarray],
    *,
    seed: int = 0,
    limit: int = EXHAUSTIVE_LIMIT,
    samples: int = SAMPLE_SIZE,
) -> MorphismCheck:
    """Check a map given on code arrays between two product rings.

    Exhaustive (all elements, all pairs) when the source has at most
    ``limit`` elements, seeded random sampling otherwise.
    """
    rng = np.random.default_rng(seed)
    exhaustive = source.order <= limit
    if exhaustive:
        src = np.asarray(source.codes)
    else:
        src = source.random_codes(rng, samples)
    img = np.asarray(phi(src))
    unital = bool(np.array_equal(phi(source.one.array[None, :])[0], target.one.array))
    additive = multiplicative = True
    cases = 0
    for i, j in _pairs(len(src), rng, exhaustive, samples):
        a, b = src[i], src[j]
        additive &= bool(np.array_equal(phi(source.vadd(a, b)), target.vadd(img[i], img[j])))
        multiplicative &= bool(np.array_equal(phi(source.vmul(a, b)), target.vmul(img[i], img[j])))
        cases += len(i)
    if exhaustive:
        hit = np.unique(target.encode(img)) if target.labels else np.zeros(1)
        injective = len(hit) == source.order
        surjective = len(hit) == target.order
    else:
        # Sampled: injectivity on the sample, surjectivity by cardinality.
        keys_src = source.encode(src) if source.labels else np.zeros(len(src))
        keys_img = target.encode(img) if target.labels else np.zeros(len(img))
        pairs = set(zip(keys_src.tolist(), keys_img.tolist()))
        injective = len({k for _, k in pairs}) == len({k for k, _ in pairs})
        surjective = injective and source.order == target.order
    return MorphismCheck(additive, multiplicative, unital, injective, surjective, exhaustive, cases)


@dataclass(frozen=True)
class DisjointSplit:
    """Witness of ``∏_{Su f ∪ Su g} K_x ≅ R × R'`` for disjoint supports."""

    union: IndexSet
    left: IndexSet
    right: IndexSet
    pair_ring: IndexSet
    check: MorphismCheck

    def __call__(self, h: ProdElem) -> tuple[ProdElem, ProdElem]:
        return h.restrict(self.left.labels), h.restrict(self.right.labels)


def pair_ring(left: IndexSet, right: IndexSet) -> IndexSet:
    """``R × R'`` as a product ring over tagged labels ``("L", x)`` / ``("R", y)``."""
    labels = tuple(f"L:{x}" for x in left.labels) + tuple(f"R:{y}" for y in right.labels)
    return IndexSet(labels, left.fields + right.fields, allow_empty=True)


def split_disjoint(f: ProdElem, g: ProdElem, *, seed: int = 0) -> DisjointSplit:
    if f.ring != g.ring:
        raise RingMismatchError()
    sf, sg = f.support(), g.support()
    if sf & sg:
        raise PreconditionError("supports overlap")
    union = f.ring.sub(sf | sg)
    left, right = f.ring.sub(sf), f.ring.sub(sg)
    target = pair_ring(left, right)
    cols = np.array(
        [union.position(x) for x in left.labels] + [union.position(y) for y in right.labels],
        dtype=np.int64,
    )

    def phi(codes):
        return np.asarray(codes)[..., cols]

    check = check_code_morphism(union, target, phi, seed=seed)
    return DisjointSplit(union, left, right, target, check)


def multiples_oracle(f: ProdElem) -> np.ndarray:
    """Membership vector of ``{r f : r ∈ Λ}`` computed by multiplying out every ``r``."""
    ring = f.ring
    prods = ring.vmul(ring.codes, f.array)
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.encode(prods)] = True
    return mask

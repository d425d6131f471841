"""Tensor products of quotient algebras of Λ and rings of fractions.

Two independent routes are provided for every construction:

* a structural one that uses supports (``A ⊗ B`` keeps the coordinates both
  factors keep, ``Λ_f`` is the projection onto ``Su(f)``), and
* a first-principles one: the tensor product as a presented abelian group
  reduced by Smith normal form, and fractions compared by exhaustive search
  for a witness ``t`` with ``t(f g' − f' g) = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import PreconditionError, RingMismatchError, SizeLimitError
from .product_ring import IndexSet, ProdElem, Projection
from .smith import PresentedGroup, present

ORACLE_LIMIT = 4096
LOCALIZE_LIMIT = 256


@dataclass(frozen=True)
class QuotAlgebra:
    """``Λ / {h : Su(h) ⊆ kill}``, i.e. the coordinates on ``base ∖ kill``."""

    base: IndexSet
    kill: frozenset[str]

    def __post_init__(self):
        k = frozenset(self.kill)
        if k - self.base.label_set:
            raise KeyError(f"unknown labels {sorted(k - self.base.label_set)}")
        object.__setattr__(self, "kill", k)

    @classmethod
    def surviving(cls, base: IndexSet, survivors: Iterable[str]) -> QuotAlgebra:
        return cls(base, base.label_set - frozenset(survivors))

    @classmethod
    def of_support(cls, f: ProdElem) -> QuotAlgebra:
        """``∏_{x ∈ Su f} K_x`` as a Λ-algebra."""
        return cls.surviving(f.ring, f.support())

    @property
    def survivors(self) -> frozenset[str]:
        return self.base.label_set - self.kill

    @cached_property
    def ring(self) -> IndexSet:
        return self.base.sub(self.survivors)

    @cached_property
    def structure_map(self) -> Projection:
        return Projection(self.base, self.ring)

    @cached_property
    def _lift_cols(self) -> np.ndarray:
        return np.array([self.base.position(x) for x in self.ring.labels], dtype=np.int64)

    def lift_codes(self, codes: np.ndarray) -> np.ndarray:
        """Extend by zeros on the killed coordinates."""
        codes = np.asarray(codes)
        out = np.zeros(codes.shape[:-1] + (len(self.base.labels),), dtype=np.int64)
        out[..., self._lift_cols] = codes
        return out

    def describe(self) -> str:
        return "{" + ",".join(self.ring.labels) + "}"


def tensor(A: QuotAlgebra, B: QuotAlgebra) -> QuotAlgebra:
    """``A ⊗_Λ B ≅ Λ/(I_A + I_B)``: keep the coordinates both factors keep."""
    if A.base != B.base:
        raise RingMismatchError("base mismatch")
    return QuotAlgebra(A.base, A.kill | B.kill)


def bilinear_codes(A: QuotAlgebra, B: QuotAlgebra, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``(a, b) ↦`` product of the lifts, projected to ``A ⊗ B``."""
    C = tensor(A, B)
    prod = A.base.vmul(A.lift_codes(a), B.lift_codes(b))
    return C.structure_map.apply_codes(prod)


# -- first-principles tensor product ---------------------------------------


def _additive_generators(ring: IndexSet) -> list[np.ndarray]:
    """Elements ``t^i`` placed at a single coordinate; they span the ring additively."""
    gens = []
    for pos, k in enumerate(ring.fields):
        for i in range(k.k):
            v = np.zeros(len(ring.labels), dtype=np.int64)
            v[pos] = k.p**i
            gens.append(v)
    return gens


def _ring_generators(base: IndexSet) -> list[np.ndarray]:
    """``t_x · Δ_x`` for every point; together with 1 they generate Λ as a ring."""
    out = []
    for pos, k in enumerate(base.fields):
        v = np.zeros(len(base.labels), dtype=np.int64)
        v[pos] = k.gen.value
        out.append(v)
    return out


@dataclass
class TensorOracle:
    """``A ⊗_Λ B`` computed from its presentation.

    Generators are the pairs ``(a, b)``, numbered ``ia * |B| + ib``.
    """

    A: QuotAlgebra
    B: QuotAlgebra
    group: PresentedGroup
    relation_count: int
    mult_well_defined: bool
    mult: dict[tuple[tuple[int, ...], tuple[int, ...]], tuple[int, ...]] = field(repr=False)

    @property
    def order(self) -> int | None:
        return self.group.order

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.group.invariants

    def pair_class(self, ia: int, ib: int) -> tuple[int, ...]:
        return self.group.generator(ia * self.B.ring.order + ib)

    @property
    def one(self) -> tuple[int, ...]:
        return self.pair_class(self.A.ring.one.index, self.B.ring.one.index)


def tensor_oracle(
    A: QuotAlgebra, B: QuotAlgebra, *, budget: int | None = None, limit: int = ORACLE_LIMIT
) -> TensorOracle:
    """``A ⊗_Λ B`` as the free abelian group on pairs modulo bilinearity and balancing."""
    if A.base != B.base:
        raise RingMismatchError("base mismatch")
    RA, RB = A.ring, B.ring
    na, nb = RA.order, RB.order
    if na * nb > limit:
        raise SizeLimitError(f"|A|·|B| = {na * nb} exceeds {limit}")
    ca, cb = RA.codes, RB.codes
    ia, ib = np.arange(na), np.arange(nb)

    def col(i, j):
        return i * nb + j

    rels: list[dict[int, int]] = []

    def add_rows(*terms):
        # terms: (coefficient, column-array) triples broadcast to a common shape
        cols = np.broadcast_arrays(*[t[1] for t in terms])
        for k in range(cols[0].size):
            row: dict[int, int] = {}
            for (coef, _), c in zip(terms, cols):
                j = int(c.flat[k])
                row[j] = row.get(j, 0) + coef
            rels.append(row)

    I, J = np.meshgrid(ia, ib, indexing="ij")
    # 0 ⊗ b = a ⊗ 0 = 0; implied by the rows below unless a factor has no generators.
    add_rows((1, col(0, ib)))
    add_rows((1, col(ia, 0)))
    for g in _additive_generators(RA):
        ig = int(RA.encode(g))
        isum = RA.encode(RA.vadd(ca, g))[:, None]
        add_rows((1, col(isum, J)), (-1, col(I, J)), (-1, col(ig, J)))
    for h in _additive_generators(RB):
        ih = int(RB.encode(h))
        jsum = RB.encode(RB.vadd(cb, h))[None, :]
        add_rows((1, col(I, jsum)), (-1, col(I, J)), (-1, col(I, ih)))
    for lam in _ring_generators(A.base):
        la = RA.encode(RA.vmul(ca, A.structure_map.apply_codes(lam)))[:, None]
        lb = RB.encode(RB.vmul(cb, B.structure_map.apply_codes(lam)))[None, :]
        add_rows((1, col(la, J)), (-1, col(I, lb)))
    if len(rels) > 16 * limit:
        raise SizeLimitError(f"{len(rels)} relations exceed the guard")
    group = present(na * nb, rels, budget=budget)

    # Induced multiplication (a⊗b)(a'⊗b') = aa'⊗bb', checked to depend only on classes.
    cls = [group.generator(j) for j in range(na * nb)]
    # Number the classes so the consistency check runs on integer arrays.
    ids: dict[tuple[int, ...], int] = {}
    cid = np.array([ids.setdefault(c, len(ids)) for c in cls], dtype=np.int64)
    names = list(ids)
    n = len(ids)
    prod_a = RA.encode(RA.vmul(ca[:, None, :], ca[None, :, :])) if RA.labels else np.zeros((na, na), dtype=np.int64)
    prod_b = RB.encode(RB.vmul(cb[:, None, :], cb[None, :, :])) if RB.labels else np.zeros((nb, nb), dtype=np.int64)
    table = np.full(n * n, -1, dtype=np.int64)
    well_defined = True
    for a1 in range(na):
        # All products (a1 ⊗ b1)(a2 ⊗ b2) for this a1, indexed [b1, a2, b2].
        left = cid[col(a1, ib)][:, None, None]
        right = cid[col(ia[:, None], ib[None, :])][None, :, :]
        val = cid[col(prod_a[a1][None, :, None], prod_b[:, None, :])]
        key = (left * n + right).ravel()
        val = val.ravel()
        order = np.argsort(key, kind="stable")
        key, val = key[order], val[order]
        start = np.r_[0, np.flatnonzero(np.diff(key)) + 1]
        first = val[start]
        # Within one chunk every key must map to one value ...
        if not np.array_equal(val, np.repeat(first, np.diff(np.r_[start, len(key)]))):
            well_defined = False
        # ... and agree with what earlier chunks recorded.
        ukey = key[start]
        seen = table[ukey]
        if ((seen >= 0) & (seen != first)).any():
            well_defined = False
        table[ukey] = np.where(seen >= 0, seen, first)
    mult = {
        (names[k // n], names[k % n]): names[v] for k, v in enumerate(table.tolist()) if v >= 0
    }
    return TensorOracle(A, B, group, len(rels), well_defined, mult)


@dataclass
class TensorComparison:
    """Whether the structural tensor and the presented tensor are isomorphic rings."""

    structural_order: int
    oracle_order: int | None
    invariant_factors: tuple[int, ...]
    well_defined: bool
    bijective: bool
    additive: bool
    multiplicative: bool
    unital: bool

    @property
    def is_iso(self) -> bool:
        return (
            self.well_defined and self.bijective and self.additive and self.multiplicative and self.unital
        )

    ok = is_iso


def compare_tensor(A: QuotAlgebra, B: QuotAlgebra, **kw) -> TensorComparison:
    """Check that ``class(a⊗b) ↦ proj(ab)`` is a ring isomorphism onto ``tensor(A, B)``."""
    oracle = tensor_oracle(A, B, **kw)
    C = tensor(A, B).ring
    RA, RB = A.ring, B.ring
    I, J = np.meshgrid(np.arange(RA.order), np.arange(RB.order), indexing="ij")
    images = C.encode(bilinear_codes(A, B, RA.codes[I.ravel()], RB.codes[J.ravel()]))
    nu: dict[tuple[int, ...], int] = {}
    well_defined = oracle.mult_well_defined
    for k, (i, j) in enumerate(zip(I.ravel(), J.ravel())):
        c = oracle.pair_class(int(i), int(j))
        if nu.setdefault(c, int(images[k])) != int(images[k]):
            well_defined = False
    order = oracle.order
    bijective = (
        order is not None
        and order == C.order
        and len(nu) == order
        and len(set(nu.values())) == C.order
    )
    additive = multiplicative = True
    if bijective and well_defined:
        group = oracle.group
        for c1, v1 in nu.items():
            for c2, v2 in nu.items():
                s = nu.get(group.add(c1, c2))
                if s is None or s != int(C.encode(C.vadd(C.decode(v1), C.decode(v2)))):
                    additive = False
                p = nu.get(oracle.mult[(c1, c2)])
                if p is None or p != int(C.encode(C.vmul(C.decode(v1), C.decode(v2)))):
                    multiplicative = False
    unital = nu.get(oracle.one) == C.one.index
    return TensorComparison(
        C.order, order, oracle.invariant_factors, well_defined, bijective, additive, multiplicative, unital
    )


# -- fractions --------------------------------------------------------------


def powers(f: ProdElem) -> list[ProdElem]:
    """``{1, f, f², …}`` (finite, since Λ is finite)."""
    out, cur = [], f.ring.one
    while cur not in out:
        out.append(cur)
        cur = cur * f
    return out


@dataclass
class FractionRing:
    """``S⁻¹Λ`` for a multiplicative subset ``S`` given by element indices."""

    base: IndexSet
    dens: np.ndarray

    @cached_property
    def den_codes(self) -> np.ndarray:
        return self.base.codes[self.dens]

    def witnesses(self, f1, g1, f2, g2) -> np.ndarray:
        """For broadcastable code arrays, whether some ``t ∈ S`` kills ``f1 g2 − f2 g1``."""
        R = self.base
        d = R.vsub(R.vmul(f1, g2), R.vmul(f2, g1))
        killed = R.vmul(self.den_codes, d[..., None, :]) == 0
        return killed.all(axis=-1).any(axis=-1)

    def equal(self, f1: ProdElem, g1: ProdElem, f2: ProdElem, g2: ProdElem) -> bool:
        return bool(self.witnesses(f1.array, g1.array, f2.array, g2.array))

    def pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """All formal fractions ``(numerator index, denominator index)``."""
        N = self.base.order
        num = np.repeat(np.arange(N), len(self.dens))
        den = np.tile(self.dens, N)
        return num, den

    def classes(self) -> np.ndarray:
        """Equivalence class id of every pair from :meth:`pairs`, by witness search."""
        num, den = self.pairs()
        C = self.base.codes
        rep_f: list[int] = []
        rep_g: list[int] = []
        out = np.empty(len(num), dtype=np.int64)
        for k in range(len(num)):
            if rep_f:
                hit = self.witnesses(C[num[k]], C[den[k]], C[rep_f], C[rep_g])
                idx = np.flatnonzero(hit)
                if len(idx):
                    out[k] = idx[0]
                    continue
            out[k] = len(rep_f)
            rep_f.append(int(num[k]))
            rep_g.append(int(den[k]))
        return out

    def class_count(self) -> int:
        return int(self.classes().max()) + 1


def localize(base: IndexSet, dens: Iterable[ProdElem]) -> FractionRing:
    dens = list(dens)
    if any(d.ring != base for d in dens):
        raise RingMismatchError("denominators must lie in the base ring")
    idx = sorted({d.index for d in dens})
    if base.one.index not in idx:
        raise PreconditionError("multiplicative set must contain 1")
    S = set(idx)
    C = base.codes
    prods = base.encode(base.vmul(C[idx][:, None, :], C[idx][None, :, :]))
    if not set(prods.ravel().tolist()) <= S:
        raise PreconditionError("set is not multiplicatively closed")
    return FractionRing(base, np.array(idx, dtype=np.int64))


@dataclass
class LocalizationWitness:
    """``π′_f : Λ_f → ∏_{x∈Su f} K_x``, checked exhaustively."""

    f: ProdElem
    target: IndexSet
    fraction_classes: int
    well_defined: bool
    injective: bool
    surjective: bool
    additive: bool
    multiplicative: bool
    unital: bool

    @property
    def is_iso(self) -> bool:
        return all(
            (self.well_defined, self.injective, self.surjective, self.additive, self.multiplicative, self.unital)
        )

    ok = is_iso


def lemma_lambda_f(f: ProdElem, *, limit: int = LOCALIZE_LIMIT, method: str = "grouped") -> LocalizationWitness:
    """Compare ``Λ_f`` (formal fractions) with the projection onto ``Su(f)``.

    ``method="grouped"`` groups fractions by their image and then proves,
    by witness search, that each group is one fraction class and distinct
    groups are distinct classes.  ``method="enumerate"`` computes the
    fraction classes blindly first.  Both are exhaustive.
    """
    R = f.ring
    if R.order > limit:
        raise SizeLimitError(f"|Λ| = {R.order} exceeds {limit}")
    L = localize(R, powers(f))
    target = R.sub(f.support())
    proj = Projection(R, target)
    num, den = L.pairs()
    C = R.codes
    # π′(g / d) = π(g) π(d)⁻¹; every denominator is a power of f, a unit on Su(f).
    def image(n, d):
        return target.vmul(proj.apply_codes(n), _inv(target, proj.apply_codes(d)))

    img = image(C[num], C[den])
    keys = target.encode(img) if target.labels else np.zeros(len(num), dtype=np.int64)

    if method == "enumerate":
        cls = L.classes()
        ncls = int(cls.max()) + 1
        first = {}
        well_defined = injective = True
        for c, k in zip(cls.tolist(), keys.tolist()):
            if first.setdefault(c, k) != k:
                well_defined = False
        injective = len(set(first.values())) == ncls
        rep_num = np.array([num[np.flatnonzero(cls == c)[0]] for c in range(ncls)])
        rep_den = np.array([den[np.flatnonzero(cls == c)[0]] for c in range(ncls)])
    else:
        uniq, first_idx, inverse = np.unique(keys, return_index=True, return_inverse=True)
        inverse = inverse.ravel()
        rep_num, rep_den = num[first_idx], den[first_idx]
        # Each fraction is equivalent to the representative of its image group ...
        same = L.witnesses(C[num], C[den], C[rep_num[inverse]], C[rep_den[inverse]])
        injective = bool(same.all())
        # ... and representatives of different groups are inequivalent.
        G = len(uniq)
        cross = L.witnesses(
            C[rep_num][:, None, :], C[rep_den][:, None, :], C[rep_num][None, :, :], C[rep_den][None, :, :]
        )
        well_defined = bool((cross == np.eye(G, dtype=bool)).all())
        ncls = G

    hit = set(keys.tolist())
    surjective = len(hit) == target.order
    # Ring operations on fractions, compared with the target ring, over all pairs of classes.
    rn, rd = C[rep_num], C[rep_den]
    a_n, a_d = rn[:, None, :], rd[:, None, :]
    b_n, b_d = rn[None, :, :], rd[None, :, :]
    sum_n = R.vadd(R.vmul(a_n, b_d), R.vmul(b_n, a_d))
    prod_n = R.vmul(a_n, b_n)
    prod_d = R.vmul(a_d, b_d)
    ia, ib = image(a_n, a_d), image(b_n, b_d)
    additive = bool(np.array_equal(image(sum_n, prod_d), target.vadd(ia, ib)))
    multiplicative = bool(np.array_equal(image(prod_n, prod_d), target.vmul(ia, ib)))
    unital = bool(np.array_equal(image(R.one.array, R.one.array), target.one.array))
    return LocalizationWitness(
        f, target, ncls, well_defined, injective, surjective, additive, multiplicative, unital
    )


def _inv(ring: IndexSet, codes: np.ndarray) -> np.ndarray:
    if not ring.labels:
        return codes
    cols = [k.tables[3][codes[..., i]] for i, k in enumerate(ring.fields)]
    return np.stack(cols, axis=-1)


# -- the finite, degenerate localization at cofinite supports ---------------


def cofinite_set(base: IndexSet) -> list[ProdElem]:
    """Elements with cofinite support; on a finite index set that is every element."""
    return list(base.elements())


def finite_support_ideal(base: IndexSet) -> list[ProdElem]:
    """Elements with finite support; on a finite index set that is every element."""
    return list(base.elements())


def cofinite_localization_finite(base: IndexSet, *, seed: int = 42, trials: int = 200, model_points: int = 10) -> list:
    """Localization at cofinite supports on a finite index set, plus the maximal-ideal criterion.

    On a finite set every support is both finite and cofinite, so ``𝔉(Λ) = Λ``
    and ``0 ∈ T``; both ``T⁻¹Λ`` and ``Λ/𝔉(Λ)`` are the zero ring.  The
    nondegenerate statement is checked in the eventually periodic model.
    """
    from . import ev_periodic as ev
    from .product_ring import generated_ideal, maximal_ideal
    from .report import record

    anchor = "localization-at-cofinite"
    inst = base.describe()
    out = []
    fin = generated_ideal(base, [base.delta(x) for x in base.labels])
    out.append(record("localization.finite.fin-is-everything", anchor, inst,
                      base.one in fin and len(finite_support_ideal(base)) == base.order))
    T = cofinite_set(base)
    zero_in_T = any(not t for t in T)
    if base.order <= 64:
        L = localize(base, T)
        count = L.class_count()
        detail = f"T⁻¹Λ has {count} class(es) by witness search"
    else:
        count = 1 if zero_in_T else None
        detail = "0 ∈ T, so every fraction is equivalent to 0"
    out.append(record("localization.finite.both-zero", anchor, inst, zero_in_T and count == 1, detail=detail))

    # Maximal-ideal criterion: M ∩ T = ∅ iff 𝔉 ⊆ M; here both sides are false for every m_x.
    ok = True
    for x in base.labels:
        m = maximal_ideal(base, x)
        w = base.one - base.delta(x)
        meets_T = w in m and w in T
        contains_fin = all(base.delta(y) in m for y in base.labels)
        ok &= meets_T and not contains_fin
    out.append(record("localization.finite.maximal-ideals", anchor, inst, ok,
                      detail="1 − Δ_x lies in T ∩ m_x; no m_x contains 𝔉"))

    # Nondegenerate instance in the eventually periodic model.
    checks = ev.localization_trials(ev.parse_field(3), trials=trials, seed=seed)
    out.append(record("localization.periodic.cross-check", anchor, f"eventually periodic over 3, seed {seed}",
                      all(c.ok for c in checks), detail=f"{len(checks)} seeded fractions"))
    spec = ev.parse_field(3)
    one = ev.one(spec)
    model_ok = True
    for n in range(model_points):
        d = ev.EvPeriodic.delta(spec, n)
        w = one - d  # in m_n and cofinite
        meets_T = w.code_at(n) == 0 and ev.in_cofinite_set(w)
        escapes = d.code_at(n) != 0 and ev.in_finite_ideal(d)  # Δ_n ∈ 𝔉 ∖ m_n
        model_ok &= meets_T and escapes
    out.append(record("localization.periodic.maximal-ideals", anchor, f"m_n for n < {model_points}", model_ok,
                      detail="class-level check in the eventually periodic model"))
    return out

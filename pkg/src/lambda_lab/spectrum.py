"""Ideals, primes and maximal ideals of a finite product of fields.

The ideal oracle knows nothing about supports: it enumerates subsets of the
ring closed under addition and multiplication by ring elements, either over
all ``2^|Λ|`` subsets (tiny rings) or by closing principal ideals under sums.
Everything else in this module is checked against it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import PreconditionError, SizeLimitError
from .ev_periodic import EvPeriodic, in_finite_ideal
from .finite_field import GF2
from .product_ring import (
    IndexSet,
    ProdElem,
    SupportIdeal,
    label_mask,
    maximal_ideal,
    support_mask,
)
from .report import Record, record

SUBSET_LIMIT = 16
CLOSURE_LIMIT = 4096


def _bits(mask: int) -> list[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _to_mask(bools: np.ndarray) -> int:
    return int(sum(1 << int(i) for i in np.flatnonzero(bools)))


class _Tables:
    """Index-level addition and multiplication tables of a small ring."""

    def __init__(self, ring: IndexSet):
        C = ring.codes
        self.ring = ring
        self.n = ring.order
        self.add = ring.encode(ring.vadd(C[:, None, :], C[None, :, :]))
        self.mul = ring.encode(ring.vmul(C[:, None, :], C[None, :, :]))


@dataclass
class IdealOracleResult:
    """All ideals of a finite ring, as bitmasks over element indices."""

    ring: IndexSet
    ideals: list[int]
    primes: list[int]
    maximals: list[int]
    method: str
    _tables: _Tables = field(repr=False)

    def members(self, mask: int) -> list[ProdElem]:
        return [self.ring.from_index(i) for i in _bits(mask)]

    def mask_of(self, ideal: SupportIdeal) -> int:
        return _to_mask(ideal.mask())

    def as_support_ideal(self, mask: int) -> SupportIdeal | None:
        """The support ideal with exactly these members, if there is one."""
        idx = _bits(mask)
        sup = frozenset().union(*(self.ring.from_index(i).support() for i in idx))
        cand = SupportIdeal(self.ring, sup)
        return cand if self.mask_of(cand) == mask else None

    def radical(self, mask: int) -> int:
        """``{a : a^n ∈ I for some n ≥ 1}``."""
        mul = self._tables.mul
        idx = np.arange(self.ring.order)
        cur = idx.copy()
        member = np.zeros(self.ring.order, dtype=bool)
        inside = np.array([(mask >> i) & 1 for i in range(self.ring.order)], dtype=bool)
        seen = set()
        while True:
            member |= inside[cur]
            key = cur.tobytes()
            if key in seen:
                break
            seen.add(key)
            cur = mul[cur, idx]
        return _to_mask(member)

    @property
    def full(self) -> int:
        return (1 << self.ring.order) - 1


def _is_ideal(t: _Tables, mask: int) -> bool:
    idx = _bits(mask)
    if not idx or 0 not in idx:
        return False
    inside = np.zeros(t.n, dtype=bool)
    inside[idx] = True
    return bool(inside[t.add[np.ix_(idx, idx)]].all() and inside[t.mul[:, idx]].all())


def _is_prime(t: _Tables, mask: int) -> bool:
    inside = np.array([(mask >> i) & 1 for i in range(t.n)], dtype=bool)
    if inside.all():
        return False
    out = np.flatnonzero(~inside)
    return not inside[t.mul[np.ix_(out, out)]].any()


def _subset_enumeration(t: _Tables) -> list[int]:
    n = t.n
    masks = np.arange(1 << n, dtype=np.int64)
    has = [(masks >> i) & 1 == 1 for i in range(n)]
    ok = has[0].copy()
    for a in range(n):
        mult_a = 0
        for r in range(n):
            mult_a |= 1 << int(t.mul[r, a])
        ok &= ~has[a] | ((masks & mult_a) == mult_a)
    for a in range(n):
        for b in range(a, n):
            ok &= ~(has[a] & has[b]) | has[int(t.add[a, b])]
    return [int(m) for m in masks[ok]]


def _closure(t: _Tables, seed: list[int]) -> int:
    """Smallest ideal containing ``seed``."""
    inside = np.zeros(t.n, dtype=bool)
    inside[0] = True
    frontier = list(seed)
    while frontier:
        new = np.zeros(t.n, dtype=bool)
        new[t.mul[:, frontier].ravel()] = True
        new &= ~inside
        frontier = []
        for a in np.flatnonzero(new):
            if inside[a]:
                continue
            # Add the cyclic subgroup generated by a to the current additive group.
            members = np.flatnonzero(inside)
            cur = members
            while True:
                cur = t.add[cur, a]
                if inside[cur].all():
                    break
                inside[cur] = True
            frontier.append(int(a))
    return _to_mask(inside)


def _closure_enumeration(t: _Tables) -> list[int]:
    principal = {_closure(t, [a]) for a in range(t.n)}
    ideals = set(principal)
    frontier = set(principal)
    while frontier:
        new = set()
        for I, J in itertools.product(frontier, ideals):
            K = _closure(t, _bits(I | J))
            if K not in ideals:
                new.add(K)
        ideals |= new
        frontier = new
    return list(ideals)


def enumerate_ideals(base: IndexSet, method: str = "auto") -> IdealOracleResult:
    """Every ideal of ``base`` together with its primes and maximal ideals."""
    n = base.order
    if method == "auto":
        method = "subsets" if n <= SUBSET_LIMIT else "closure"
    if method == "subsets" and n > SUBSET_LIMIT:
        raise SizeLimitError(f"subset enumeration needs |Λ| ≤ {SUBSET_LIMIT}, got {n}")
    if n > CLOSURE_LIMIT:
        raise SizeLimitError(f"ideal enumeration needs |Λ| ≤ {CLOSURE_LIMIT}, got {n}")
    t = _Tables(base)
    found = _subset_enumeration(t) if method == "subsets" else _closure_enumeration(t)
    ideals = sorted(found, key=lambda m: (bin(m).count("1"), m))
    for m in ideals:
        if not _is_ideal(t, m):
            raise AssertionError(f"oracle produced a non-ideal {m:b}")
    full = (1 << n) - 1
    proper = [m for m in ideals if m != full]
    maximals = [m for m in proper if not any(m != o and m & o == m for o in proper)]
    primes = [m for m in proper if _is_prime(t, m)]
    return IdealOracleResult(base, ideals, primes, maximals, method, t)


@dataclass(frozen=True)
class BasicOpen:
    """``D(f)``, identified with its set of points ``Su(f)``."""

    f: ProdElem
    points: frozenset[str]

    def __le__(self, other: BasicOpen) -> bool:
        return self.points <= other.points


def basic_open(f: ProdElem) -> BasicOpen:
    return BasicOpen(f, f.support())


def oracle_basic_open(f: ProdElem, oracle: IdealOracleResult) -> list[int]:
    """Primes (as masks) not containing ``f``."""
    i = f.index
    return [P for P in oracle.primes if not (P >> i) & 1]


def in_radical_of_principal(f: ProdElem, g: ProdElem, oracle: IdealOracleResult) -> bool:
    """Whether ``f ∈ √(g)``, using the oracle's smallest ideal containing ``g``."""
    containing = [m for m in oracle.ideals if (m >> g.index) & 1]
    principal = min(containing, key=lambda m: bin(m).count("1"))
    return bool((oracle.radical(principal) >> f.index) & 1)


def longest_chain(masks: list[int]) -> int:
    """Number of members in a longest strictly ascending chain."""
    order = sorted(masks, key=lambda m: bin(m).count("1"))
    best: dict[int, int] = {}
    for m in order:
        best[m] = 1 + max((best[o] for o in best if o != m and o & m == o), default=0)
    return max(best.values(), default=0)


def finiteness_suite(base: IndexSet, direction: str = "finite") -> list[Record]:
    """Finite-side checks of the equivalence of finiteness, noetherian and artinian."""
    anchor = "finiteness-equivalences"
    inst = base.describe()
    if direction != "finite":
        return [
            record(
                "spectrum.finiteness.infinite",
                anchor,
                inst,
                "partial",
                detail="not desk-verifiable",
            )
        ]
    out: list[Record] = []
    oracle = enumerate_ideals(base)
    points = {x: oracle.mask_of(maximal_ideal(base, x)) for x in base.labels}
    inter = oracle.full
    for m in points.values():
        inter &= m
    out.append(record("spectrum.finiteness.intersection", anchor, inst, inter == 1,
                      detail="intersection of all m_x is the zero ideal"))
    out.append(record("spectrum.finiteness.maximals", anchor, inst,
                      sorted(oracle.maximals) == sorted(points.values()),
                      detail=f"{len(oracle.maximals)} maximal ideals"))
    chain = longest_chain(oracle.ideals)
    n = len(base.labels)
    out.append(record("spectrum.finiteness.acc", anchor, inst, chain == n + 1,
                      detail=f"longest ascending chain {chain}"))
    desc = longest_chain([oracle.full ^ m for m in oracle.ideals])
    out.append(record("spectrum.finiteness.dcc", anchor, inst, desc == n + 1,
                      detail=f"longest descending chain {desc}"))
    total = base.zero
    for x in base.labels:
        total = total + base.delta(x)
    out.append(record("spectrum.finiteness.delta-sum", anchor, inst, total == base.one))
    # Infinite side: only evidence in the periodic model.
    one = EvPeriodic.constant(GF2, 1)
    proper = not in_finite_ideal(one)
    chain_ok = all(
        in_finite_ideal(EvPeriodic.delta(GF2, k)) and EvPeriodic.delta(GF2, k).finite_support() == [k]
        for k in range(8)
    )
    out.append(record("spectrum.finiteness.infinite-proxy", anchor, "eventually periodic GF(2)^N",
                      "partial" if proper and chain_ok else "fail",
                      detail="finite-support ideal is proper; supports {0..k} give a strictly "
                             "ascending chain of ideals (proxy only)"))
    return out


@dataclass
class ResidueFieldWitness:
    ring: IndexSet
    cosets: int
    q: int
    canonical_bijective: bool
    canonical_morphism: bool
    frobenius_identity: bool

    @property
    def ok(self) -> bool:
        return self.cosets == self.q and self.canonical_bijective and self.canonical_morphism and self.frobenius_identity


def residue_field(base: IndexSet, M) -> ResidueFieldWitness:
    """``R/M`` for a constant-field ring ``R = Fun(X, F_q)`` by coset enumeration.

    ``M`` is a :class:`SupportIdeal` or a membership bitmask from the oracle.
    """
    if len(set(base.fields)) != 1:
        raise PreconditionError("residue_field needs a constant field")
    K = base.fields[0]
    t = _Tables(base)
    mask = _to_mask(M.mask()) if isinstance(M, SupportIdeal) else int(M)
    if not _is_ideal(t, mask) or mask == (1 << t.n) - 1:
        raise PreconditionError("not a proper ideal")
    members = np.array(_bits(mask))
    # Canonical coset representative: least index in r + M.
    rep = t.add[:, members].min(axis=1)
    coset_ids = np.unique(rep)
    # Field test on the quotient: every nonzero coset has an inverse coset.
    zero_rep = rep[0]
    one_rep = rep[base.one.index]
    prod_rep = rep[t.mul[np.ix_(coset_ids, coset_ids)]]
    for i, c in enumerate(coset_ids):
        if c != zero_rep and not (prod_rep[i] == one_rep).any():
            raise PreconditionError("ideal is not maximal")
    consts = [base.constant(a.value).index for a in K.elements()]
    images = [int(rep[c]) for c in consts]
    bijective = len(set(images)) == K.q == len(coset_ids)
    addK, mulK = K.tables[0], K.tables[1]
    morphism = all(
        rep[t.add[consts[a], consts[b]]] == images[int(addK[a, b])]
        and rep[t.mul[consts[a], consts[b]]] == images[int(mulK[a, b])]
        for a in range(K.q)
        for b in range(K.q)
    )
    # f^q == f for every element.
    cur = np.arange(t.n)
    for _ in range(K.q - 1):
        cur = t.mul[cur, np.arange(t.n)]
    frob = bool((cur == np.arange(t.n)).all())
    return ResidueFieldWitness(base, len(coset_ids), K.q, bijective, bool(morphism), frob)

"""The discrete scheme attached to a finite set of points with fields.

Sections over an open ``U`` are ``∏_{x∈U} K_x``; restrictions are
coordinate projections.  This module checks the sheaf axioms, compares the
scheme with ``Spec Λ`` through the point map ``x ↦ m_x``, verifies the
separatedness criterion, and exposes the functor ``Fun(-, K)``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import PreconditionError
from .finite_field import FieldSpec, parse_field
from .product_ring import IndexSet, Projection, check_code_morphism, maximal_ideal, principal_ideal
from .report import Record, record
from .spectrum import enumerate_ideals
from .tensor_local import QuotAlgebra, _inv, lemma_lambda_f, powers, tensor

SHEAF_EXHAUSTIVE = 4
SEPARATED_LIMIT = 5


def subsets(labels: Iterable[str]) -> Iterator[frozenset[str]]:
    labels = list(labels)
    for r in range(len(labels) + 1):
        for combo in itertools.combinations(labels, r):
            yield frozenset(combo)


def _name(U: Iterable[str]) -> str:
    return "{" + ",".join(sorted(U)) + "}"


@functools.lru_cache(maxsize=4096)
def _sections(base: IndexSet, U: frozenset[str]) -> IndexSet:
    return base.sub(U)


@functools.lru_cache(maxsize=16384)
def _restriction(base: IndexSet, U: frozenset[str], V: frozenset[str]) -> Projection:
    return Projection(_sections(base, U), _sections(base, V))


@dataclass(frozen=True)
class SheafedSet:
    """``(X, O_X)`` with ``O_X(U) = ∏_{x∈U} K_x``; sections are built on demand."""

    base: IndexSet

    def sections(self, U: Iterable[str]) -> IndexSet:
        return _sections(self.base, frozenset(U))

    def restriction(self, U: Iterable[str], V: Iterable[str]) -> Projection:
        U, V = frozenset(U), frozenset(V)
        if not V <= U:
            raise PreconditionError(f"{_name(V)} is not contained in {_name(U)}")
        return _restriction(self.base, U, V)

    def opens(self) -> Iterator[frozenset[str]]:
        return subsets(self.base.labels)

    def covers(self, U: frozenset[str]) -> Iterator[tuple[frozenset[str], ...]]:
        """Families of distinct nonempty opens whose union is ``U``."""
        for cover, _, _ in _families_by_cover(self, U):
            yield cover


@dataclass
class _Partial:
    """Matching families on a prefix of a cover.

    ``rows[i]`` concatenates one section per member; ``cols[j]`` is the
    position in ``U`` of the point that column ``j`` belongs to.
    """

    cover: tuple[frozenset[str], ...]
    rows: np.ndarray
    cols: np.ndarray

    @classmethod
    def empty(cls) -> _Partial:
        return cls((), np.zeros((1, 0), dtype=np.int64), np.zeros(0, dtype=np.int64))

    def extend(self, X: SheafedSet, U: frozenset[str], V: frozenset[str]) -> _Partial:
        OU = X.sections(U)
        secs = X.sections(V)
        codes = secs.codes
        new_cols = np.array([OU.position(x) for x in secs.labels], dtype=np.int64)
        # Pair every partial family with every section of V, keeping the pairs
        # that agree with every earlier member on each overlap.
        old_idx, new_idx = [], []
        for j, c in enumerate(new_cols):
            for i in np.flatnonzero(self.cols == c):
                old_idx.append(i)
                new_idx.append(j)
        if old_idx:
            agree = (self.rows[:, None, old_idx] == codes[None, :, new_idx]).all(axis=2)
            io, inew = np.nonzero(agree)
        else:
            io = np.repeat(np.arange(len(self.rows)), len(codes))
            inew = np.tile(np.arange(len(codes)), len(self.rows))
        joined = np.concatenate([self.rows[io], codes[inew]], axis=1)
        return _Partial(self.cover + (V,), joined, np.concatenate([self.cols, new_cols]))


def _families_by_cover(X: SheafedSet, U: frozenset[str]):
    """Every cover of ``U`` with its matching families; prefixes are shared."""
    if not U:
        p = _Partial.empty()
        yield p.cover, p.rows, p.cols
        return
    parts = [V for V in subsets(sorted(U)) if V]
    stack = [(0, _Partial.empty(), frozenset())]
    while stack:
        start, partial, union = stack.pop()
        if union == U:
            yield partial.cover, partial.rows, partial.cols
        for k in range(len(parts) - 1, start - 1, -1):
            stack.append((k + 1, partial.extend(X, U, parts[k]), union | parts[k]))


def _axioms(OU: IndexSet, rows: np.ndarray, cols: np.ndarray) -> tuple[bool, bool]:
    if OU.order == 1 and not len(cols):
        return True, len(rows) == 1
    # Identity: a section is determined by its restrictions to the members.
    # Repeated columns carry the same value, so distinct ones suffice to compare.
    seen = np.unique(cols)
    keys = OU.sub([OU.labels[j] for j in seen]).encode(OU.codes[:, seen])
    identity = len(np.unique(keys)) == OU.order
    # Gluing: take each point's value from the first member containing it,
    # then restrict the glued section back to every member.
    first = np.array([np.flatnonzero(cols == j)[0] for j in range(len(OU.labels))], dtype=np.int64)
    glued = rows[:, first]
    gluing = bool(np.array_equal(glued[:, cols], rows))
    return bool(identity), gluing


def matching_families(X: SheafedSet, cover) -> tuple[np.ndarray, np.ndarray]:
    """All matching families on ``cover`` as rows, with the column-to-point map."""
    U = frozenset().union(*cover) if cover else frozenset()
    p = _Partial.empty()
    for V in cover:
        p = p.extend(X, U, frozenset(V))
    return p.rows, p.cols


def check_cover(X: SheafedSet, U: frozenset[str], cover) -> tuple[bool, bool]:
    """``(identity, gluing)`` axioms for one cover of ``U``."""
    U = frozenset(U)
    cover = tuple(frozenset(V) for V in cover)
    if frozenset().union(*cover) != U:
        raise PreconditionError("not a cover")
    p = _Partial.empty()
    for V in cover:
        p = p.extend(X, U, V)
    return _axioms(X.sections(U), p.rows, p.cols)


def check_sheaf(base: IndexSet, *, exhaustive: int = SHEAF_EXHAUSTIVE, seed: int = 0, samples: int = 200) -> list[Record]:
    """Presheaf and sheaf axioms; every cover of every open when ``|X| ≤ exhaustive``."""
    X = SheafedSet(base)
    anchor = "structure-sheaf"
    inst = base.describe()
    out: list[Record] = []
    opens = list(X.opens())
    ident = comp = True
    for U in opens:
        OU = X.sections(U)
        ident &= np.array_equal(X.restriction(U, U).apply_codes(OU.codes), OU.codes)
        for V in subsets(sorted(U)):
            for W in subsets(sorted(V)):
                two = X.restriction(V, W).apply_codes(X.restriction(U, V).apply_codes(OU.codes))
                comp &= np.array_equal(two, X.restriction(U, W).apply_codes(OU.codes))
    out.append(record("scheme.sheaf.presheaf-identity", anchor, inst, bool(ident)))
    out.append(record("scheme.sheaf.presheaf-composition", anchor, inst, bool(comp)))

    rng = np.random.default_rng(seed)
    n_covers = 0
    bad_identity: list[str] = []
    bad_gluing: list[str] = []
    full = len(base.labels) <= exhaustive
    for U in opens:
        OU = X.sections(U)
        if full:
            found = _families_by_cover(X, U)
        else:
            parts = [V for V in subsets(sorted(U)) if V]
            found = []
            for _ in range(samples if U else 1):
                fam = tuple(dict.fromkeys([p for p in parts if rng.random() < 0.3] + [U])) if U else ()
                found.append((fam, *matching_families(X, fam)))
        for cover, rows, cols in found:
            n_covers += 1
            i_ok, g_ok = _axioms(OU, rows, cols)
            if not i_ok:
                bad_identity.append(f"{_name(U)} by {[_name(V) for V in cover]}")
            if not g_ok:
                bad_gluing.append(f"{_name(U)} by {[_name(V) for V in cover]}")
    mode = "all covers" if full else "sampled covers"
    out.append(record("scheme.sheaf.identity", anchor, inst, not bad_identity,
                      detail=f"{n_covers} {mode}", counterexample=bad_identity[:1] or None))
    out.append(record("scheme.sheaf.gluing", anchor, inst, not bad_gluing,
                      detail=f"{n_covers} {mode}", counterexample=bad_gluing[:1] or None))
    return out


# -- comparison with Spec Λ ----------------------------------------------------


@dataclass
class SchemeMorphismWitness:
    base: IndexSet
    point_map: dict[str, int]  # x -> oracle mask of m_x
    bijective: bool
    preimage_of_basic_opens: bool
    open_images: bool
    comparisons_iso: bool
    squares_commute: bool
    failures: list[str] = field(default_factory=list)

    @property
    def homeomorphism(self) -> bool:
        return self.bijective and self.preimage_of_basic_opens and self.open_images

    @property
    def ok(self) -> bool:
        return self.homeomorphism and self.comparisons_iso and self.squares_commute


def _square_commutes(f, g) -> bool:
    """Restriction square for ``D(g) ⊆ D(f)`` on every fraction ``a / f^n``."""
    R = f.ring
    w = principal_ideal(f).witness(g)  # g = w f, so 1/f = w/g in Λ_g
    if w * f != g:
        return False
    Sf, Sg = R.sub(f.support()), R.sub(g.support())
    pf, pg = Projection(R, Sf), Projection(R, Sg)
    down = Projection(Sf, Sg)
    C = R.codes
    n_max = len(powers(f))
    for n in range(n_max + 1):
        fn, wn, gn = (f**n).array, (w**n).array, (g**n).array
        # ψ_f(a / f^n) restricted to Su(g)
        left = down.apply_codes(Sf.vmul(pf.apply_codes(C), _inv(Sf, pf.apply_codes(fn))))
        # ψ_g(a w^n / g^n)
        right = Sg.vmul(pg.apply_codes(R.vmul(C, wn)), _inv(Sg, pg.apply_codes(gn)))
        if not np.array_equal(left, np.broadcast_to(right, left.shape)):
            return False
    return True


def eta_morphism(base: IndexSet) -> SchemeMorphismWitness:
    """``η: X → Spec Λ``, ``x ↦ m_x``, with the comparison maps on basic opens."""
    oracle = enumerate_ideals(base)
    point_map = {x: oracle.mask_of(maximal_ideal(base, x)) for x in base.labels}
    failures: list[str] = []
    bijective = sorted(point_map.values()) == sorted(oracle.primes) and len(set(point_map.values())) == len(base.labels)
    inverse = {m: x for x, m in point_map.items()}
    pre_ok = True
    for f in base.elements():
        D = [P for P in oracle.primes if not (P >> f.index) & 1]
        pre = frozenset(inverse[P] for P in D if P in inverse)
        if pre != f.support():
            pre_ok = False
            failures.append(f"preimage of D({f!r})")
    open_images = True
    for U in subsets(base.labels):
        e = base.idempotent(U)
        image = sorted(point_map[x] for x in U)
        if image != sorted(P for P in oracle.primes if not (P >> e.index) & 1):
            open_images = False
            failures.append(f"image of {_name(U)}")
    iso = True
    for f in base.elements():
        if not lemma_lambda_f(f).is_iso:
            iso = False
            failures.append(f"psi_D({f!r})")
    squares = True
    for f in base.elements():
        for g in base.elements():
            if g.support() <= f.support() and not _square_commutes(f, g):
                squares = False
                failures.append(f"square D({g!r}) ⊆ D({f!r})")
    return SchemeMorphismWitness(base, point_map, bijective, pre_ok, open_images, iso, squares, failures)


def check_separated(base: IndexSet) -> list[Record]:
    """Surjectivity of ``O(U) ⊗_R O(V) → O(U ∩ V)`` for every pair of opens."""
    if len(base.labels) > SEPARATED_LIMIT:
        raise PreconditionError(f"at most {SEPARATED_LIMIT} points")
    X = SheafedSet(base)
    anchor = "separated-criterion"
    inst = base.describe()
    bad: list[str] = []
    disagree: list[str] = []
    pairs = 0
    opens = list(X.opens())
    for U in opens:
        for V in opens:
            pairs += 1
            W = U & V
            target = X.sections(W)
            structural = tensor(QuotAlgebra.surviving(base, U), QuotAlgebra.surviving(base, V)).survivors == W
            # Semantic route: the additive span of all products of restrictions.
            span = image_size(base, U, V)
            semantic = span == target.order
            if not (structural and semantic):
                bad.append(f"{_name(U)},{_name(V)}")
            if structural != semantic:
                disagree.append(f"{_name(U)},{_name(V)}")
    return [
        record("scheme.separated.intersection-open", anchor, inst, True,
               detail="every subset of a discrete space is open"),
        record("scheme.separated.surjective", anchor, inst, not bad,
               detail=f"{pairs} pairs of opens", counterexample=bad[:1] or None),
        record("scheme.separated.routes-agree", anchor, inst, not disagree,
               detail="tensor kill-set vs image span", counterexample=disagree[:1] or None),
    ]


def _additive_span(ring: IndexSet, codes: np.ndarray) -> int:
    """Size of the additive subgroup generated by the rows of ``codes``."""
    if not ring.labels:
        return 1
    inside = np.zeros(ring.order, dtype=bool)
    inside[0] = True
    for idx in np.unique(ring.encode(codes)):
        if inside[idx]:
            continue
        g = ring.decode(idx)
        cur = ring.codes[inside]
        while True:
            cur = ring.vadd(cur, g)
            keys = ring.encode(cur)
            if inside[keys].all():
                break
            inside[keys] = True
    return int(inside.sum())


def image_size(base: IndexSet, U: Iterable[str], V: Iterable[str]) -> int:
    """Cardinality of the image of ``O(U) ⊗ O(V) → O(U ∩ V)``, by subgroup closure."""
    X = SheafedSet(base)
    U, V = frozenset(U), frozenset(V)
    W = U & V
    target = X.sections(W)
    if not W:
        return 1
    su = X.restriction(U, W).apply_codes(X.sections(U).codes)
    sv = X.restriction(V, W).apply_codes(X.sections(V).codes)
    su, sv = np.unique(su, axis=0), np.unique(sv, axis=0)
    prods = target.vmul(su[:, None, :], sv[None, :, :]).reshape(-1, len(target.labels))
    return _additive_span(target, prods)


def minimal_subcover_size(cover: list[frozenset[str]], U: frozenset[str]) -> int:
    for r in range(len(cover) + 1):
        for fam in itertools.combinations(cover, r):
            if frozenset().union(*fam) == U:
                return r
    raise ValueError("not a cover")


def stalk_order(base: IndexSet, x: str) -> tuple[int, bool]:
    """Size of the direct limit of ``O(U)`` over opens ``U ∋ x``.

    Also reports whether restriction to ``{x}`` induces a bijection of the
    limit onto ``O({x})``.
    """
    X = SheafedSet(base)
    opens = [U for U in X.opens() if x in U]
    nodes: list[tuple[frozenset[str], int]] = []
    offset = {}
    for U in opens:
        offset[U] = len(nodes)
        nodes.extend((U, i) for i in range(X.sections(U).order))
    parent = list(range(len(nodes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for W in opens:
        groups: dict[int, int] = {}
        for U in opens:
            if not W <= U:
                continue
            keys = X.sections(W).encode(X.restriction(U, W).apply_codes(X.sections(U).codes))
            for i, k in enumerate(keys.tolist()):
                node = offset[U] + i
                if k in groups:
                    a, b = find(node), find(groups[k])
                    if a != b:
                        parent[a] = b
                else:
                    groups[k] = node
    roots = {find(i) for i in range(len(nodes))}
    point = frozenset([x])
    # Each class meets O({x}) exactly once.
    hits: dict[int, int] = {}
    for i in range(X.sections(point).order):
        r = find(offset[point] + i)
        hits[r] = hits.get(r, 0) + 1
    bijective = set(hits) == roots and all(v == 1 for v in hits.values())
    return len(roots), bijective


def check_affine_iff_finite(base: IndexSet) -> list[Record]:
    anchor = "affine-iff-finite"
    inst = base.describe()
    eta = eta_morphism(base)
    out = [record("scheme.affine.eta-iso", anchor, inst, eta.ok,
                  counterexample=eta.failures[:1] or None)]
    singletons = [frozenset([x]) for x in base.labels]
    size = minimal_subcover_size(singletons, base.label_set)
    out.append(record("scheme.affine.singleton-subcover", anchor, inst, size == len(base.labels),
                      detail=f"minimal subcover of the singleton cover has {size} members"))
    for x in base.labels:
        n, bij = stalk_order(base, x)
        out.append(record("scheme.affine.stalk", anchor, f"{inst} at {x}",
                          n == base.field_of(x).q and bij,
                          detail=f"stalk has {n} elements, K_x has {base.field_of(x).q}"))
    out.append(record("scheme.affine.infinite-proxy", anchor, inst, "partial",
                      detail="no finite subcover of the singleton cover of an infinite set; "
                             "witnessed only by the minimal-subcover size growing with |X|"))
    return out


# -- the functor Fun(-, K) ----------------------------------------------------


@dataclass(frozen=True)
class FunMorphism:
    """``Fun(f): Fun(Y, K) → Fun(X, K)``, ``g ↦ g ∘ f``."""

    source: IndexSet  # Fun(Y, K)
    target: IndexSet  # Fun(X, K)
    mapping: tuple[tuple[str, str], ...]

    @property
    def cols(self) -> np.ndarray:
        return np.array([self.source.position(y) for _, y in self.mapping], dtype=np.int64)

    def apply_codes(self, codes: np.ndarray) -> np.ndarray:
        return np.asarray(codes)[..., self.cols]

    def __call__(self, g):
        if g.ring != self.source:
            raise PreconditionError("argument is not in the source ring")
        return self.target.from_codes(self.apply_codes(g.array))

    def table(self) -> np.ndarray:
        """Index of ``Fun(f)(g)`` for every ``g``."""
        return self.target.encode(self.apply_codes(self.source.codes))


def fun_ring(labels: Iterable[str], K) -> IndexSet:
    return IndexSet(tuple(labels), (parse_field(K),) * len(tuple(labels)), allow_empty=True)


def fun_functor(f: Mapping[str, str], X: Iterable[str], Y: Iterable[str], K) -> FunMorphism:
    X, Y = tuple(X), tuple(Y)
    missing = set(X) - set(f)
    if missing:
        raise PreconditionError(f"map undefined on {sorted(missing)}")
    bad = {f[x] for x in X} - set(Y)
    if bad:
        raise PreconditionError(f"values {sorted(bad)} are not in the codomain")
    return FunMorphism(fun_ring(Y, K), fun_ring(X, K), tuple((x, f[x]) for x in X))


@dataclass
class SchemeMap:
    """``(f, f♯)`` between discrete schemes with constant field ``K``."""

    f: dict[str, str]
    components_are_morphisms: bool
    compatible_with_restrictions: bool
    stalks_local: bool

    @property
    def ok(self) -> bool:
        return self.components_are_morphisms and self.compatible_with_restrictions and self.stalks_local


def scheme_morphism(f: Mapping[str, str], X: Iterable[str], Y: Iterable[str], K) -> SchemeMap:
    """Build ``f♯_U = Fun(f_U): O_Y(U) → O_X(f⁻¹U)`` and check it is a morphism of schemes."""
    X, Y = tuple(X), tuple(Y)
    K = parse_field(K)
    comps = {}
    morph = True
    for U in subsets(Y):
        pre = tuple(x for x in X if f[x] in U)
        comp = fun_functor({x: f[x] for x in pre}, pre, sorted(U), K)
        comps[U] = comp
        c = check_code_morphism(comp.source, comp.target, comp.apply_codes)
        morph &= c.is_morphism
    compat = True
    for U in subsets(Y):
        for V in subsets(sorted(U)):
            a, b = comps[U], comps[V]
            res_y = Projection(a.source, b.source)
            res_x = Projection(a.target, b.target)
            s = a.source.codes
            compat &= np.array_equal(b.apply_codes(res_y.apply_codes(s)), res_x.apply_codes(a.apply_codes(s)))
    # Stalk map at x: O_{Y,f(x)} = K → O_{X,x} = K is f♯ on the singleton, which must be injective (local).
    local = True
    for x in X:
        comp = comps[frozenset([f[x]])]
        res = Projection(comp.target, comp.target.sub([x]))
        stalk = res.apply_codes(comp.apply_codes(comp.source.codes))
        local &= len(np.unique(stalk, axis=0)) == K.q
    return SchemeMap(dict(f), bool(morph), bool(compat), bool(local))


def all_maps(X: Iterable[str], Y: Iterable[str]) -> Iterator[dict[str, str]]:
    X, Y = list(X), list(Y)
    for values in itertools.product(Y, repeat=len(X)):
        yield dict(zip(X, values))


def _point_sets(max_size: int) -> list[tuple[str, ...]]:
    return [tuple(f"p{i}" for i in range(n)) for n in range(1, max_size + 1)]


def check_functor_laws(K, max_size: int = 3) -> list[Record]:
    """Identity, composition and faithfulness of ``Fun(-, K)`` on small sets."""
    K = parse_field(K)
    anchor = "fun-functor"
    inst = f"K={K!r}, |X|,|Y|,|Z| ≤ {max_size}"
    sets = _point_sets(max_size)
    ident = all(
        np.array_equal(fun_functor({x: x for x in S}, S, S, K).table(), np.arange(K.q ** len(S)))
        for S in sets
    )
    comp = faithful = True
    for X in sets:
        for Y in sets:
            tables = {}
            for f in all_maps(X, Y):
                Ff = fun_functor(f, X, Y, K)
                key = Ff.table().tobytes()
                if key in tables:
                    faithful = False
                tables[key] = f
                for Z in sets:
                    for g in all_maps(Y, Z):
                        Fg = fun_functor(g, Y, Z, K)
                        gf = {x: g[f[x]] for x in X}
                        Fgf = fun_functor(gf, X, Z, K)
                        s = Fg.source.codes
                        comp &= np.array_equal(Fgf.apply_codes(s), Ff.apply_codes(Fg.apply_codes(s)))
    return [
        record("functor.fun.identity", anchor, inst, ident),
        record("functor.fun.composition", anchor, inst, bool(comp)),
        record("functor.fun.faithful", anchor, inst, faithful),
    ]


@dataclass
class DualityResult:
    f: dict[str, str]
    injective: bool
    surjective: bool
    fun_injective: bool
    fun_surjective: bool
    naturality: bool

    @property
    def ok(self) -> bool:
        return (
            self.injective == self.fun_surjective
            and self.surjective == self.fun_injective
            and self.naturality
        )


def duality(f: Mapping[str, str], X: Iterable[str], Y: Iterable[str], K) -> DualityResult:
    X, Y = tuple(X), tuple(Y)
    F = fun_functor(f, X, Y, K)
    table = F.table()
    fun_surj = len(np.unique(table)) == F.target.order
    kernel = np.flatnonzero(table == 0)  # index 0 is the zero function
    fun_inj = len(kernel) == 1
    injective = len({f[x] for x in X}) == len(X)
    surjective = {f[x] for x in X} == set(Y)
    # η-naturality: the contraction of m_x along Fun(f) is m_{f(x)}.
    nat = True
    for x in X:
        m_x = maximal_ideal(F.target, x).mask()
        contraction = m_x[table]
        nat &= np.array_equal(contraction, maximal_ideal(F.source, f[x]).mask())
    return DualityResult(dict(f), injective, surjective, bool(fun_inj), bool(fun_surj), bool(nat))


def duality_suite(K, max_size: int = 3) -> list[Record]:
    """Injective/surjective duality and η-naturality over all maps between small sets."""
    K = parse_field(K)
    anchor = "fun-duality"
    inst = f"K={K!r}, |X|,|Y| ≤ {max_size}"
    sets = _point_sets(max_size)
    bad_inj: list[str] = []
    bad_surj: list[str] = []
    bad_nat: list[str] = []
    n = 0
    for X in sets:
        for Y in sets:
            for f in all_maps(X, Y):
                n += 1
                r = duality(f, X, Y, K)
                if r.injective != r.fun_surjective:
                    bad_inj.append(str(f))
                if r.surjective != r.fun_injective:
                    bad_surj.append(str(f))
                if not r.naturality:
                    bad_nat.append(str(f))
    return [
        record("duality.injective-vs-surjective", anchor, inst, not bad_inj,
               detail=f"{n} maps", counterexample=bad_inj[:1] or None),
        record("duality.surjective-vs-injective", anchor, inst, not bad_surj,
               detail=f"{n} maps", counterexample=bad_surj[:1] or None),
        record("duality.eta-naturality", anchor, inst, not bad_nat,
               detail=f"{n} maps", counterexample=bad_nat[:1] or None),
    ]


def scheme_functor_suite(K, max_size: int = 3) -> list[Record]:
    """``(f, f♯)`` is a morphism of schemes for every map between small sets."""
    K = parse_field(K)
    bad = []
    n = 0
    for X in _point_sets(max_size):
        for Y in _point_sets(max_size):
            for f in all_maps(X, Y):
                n += 1
                if not scheme_morphism(f, X, Y, K).ok:
                    bad.append(str(f))
    return [record("functor.scheme-morphism", "fun-functor", f"K={K!r}, |X|,|Y| ≤ {max_size}", not bad,
                   detail=f"{n} maps", counterexample=bad[:1] or None)]

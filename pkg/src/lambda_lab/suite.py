"""Suite configuration and the runner that turns checks into a report."""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from . import ev_periodic as ev
from .errors import LambdaLabError
from .finite_field import frobenius_fixed, parse_field
from .powerset_ring import PowersetRing, check_char_naturality, check_ring_axioms, corollary_suite
from .product_ring import (
    IndexSet,
    check_code_morphism,
    check_maximal_generator,
    maximal_ideal,
    multiples_oracle,
    principal_ideal,
    quotient_by,
    split_disjoint,
)
from .report import Record, SuiteReport, record

SUITES = ("algebra", "ideals", "tensor", "localization", "spectrum", "scheme", "duality", "ev_periodic")
DEFAULT_BUDGET = 1000
BUDGET_ENV = "LAMBDA_LAB_BUDGET"


class ConfigError(LambdaLabError, ValueError):
    """Invalid suite configuration; the message names the offending field."""


@dataclass(frozen=True)
class SuiteConfig:
    points: tuple[str, ...] = ("a", "b", "c")
    fields: tuple[str, ...] = ("2", "2", "2")
    seed: int = 42
    suites: tuple[str, ...] = SUITES
    budget: int = DEFAULT_BUDGET

    @classmethod
    def from_dict(cls, data: dict) -> SuiteConfig:
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - {"points", "fields", "seed", "suites", "budget"}
        if unknown:
            raise ConfigError(f"unknown config field(s): {', '.join(sorted(unknown))}")
        points = data.get("points", list(cls.points))
        if isinstance(points, str):
            points = [p.strip() for p in points.split(",") if p.strip()]
        if not isinstance(points, list) or not points or not all(isinstance(p, str) and p for p in points):
            raise ConfigError("points: expected a nonempty list of labels")
        if len(set(points)) != len(points):
            raise ConfigError("points: duplicate labels")
        fields = data.get("fields", "2")
        if isinstance(fields, (str, int)):
            fields = [str(fields)] * len(points)
        if not isinstance(fields, list) or len(fields) != len(points):
            raise ConfigError(f"fields: expected one field per point ({len(points)})")
        fields = [str(f) for f in fields]
        for i, f in enumerate(fields):
            try:
                parse_field(f)
            except ValueError as exc:
                raise ConfigError(f"fields[{i}]: {exc}") from None
        seed = data.get("seed", cls.seed)
        if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed < 2**64:
            raise ConfigError("seed: expected an integer in [0, 2^64)")
        suites = data.get("suites", list(SUITES))
        if isinstance(suites, str):
            suites = [suites]
        bad = [s for s in suites if s not in SUITES]
        if bad:
            raise ConfigError(f"suites: unknown suite(s) {', '.join(bad)}; choose from {', '.join(SUITES)}")
        budget = data.get("budget", cls.budget)
        if not isinstance(budget, int) or isinstance(budget, bool) or budget < 1:
            raise ConfigError("budget: expected a positive integer")
        # Keep the canonical suite order whatever order the file lists them in.
        ordered = tuple(s for s in SUITES if s in suites)
        return cls(tuple(points), tuple(fields), seed, ordered, budget)

    @classmethod
    def load(cls, path: str | os.PathLike | None = None, env: dict | None = None) -> SuiteConfig:
        data: dict = {}
        if path is not None:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
            try:
                data = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        env = os.environ if env is None else env
        if BUDGET_ENV in env:
            try:
                data = {**data, "budget": int(env[BUDGET_ENV])}
            except ValueError:
                raise ConfigError(f"{BUDGET_ENV}: expected an integer") from None
        return cls.from_dict(data)

    def with_seed(self, seed: int) -> SuiteConfig:
        return SuiteConfig.from_dict({**self.to_dict(), "seed": seed})

    def to_dict(self) -> dict:
        d = asdict(self)
        return {k: list(v) if isinstance(v, tuple) else v for k, v in d.items()}

    @property
    def base(self) -> IndexSet:
        return IndexSet.of(self.points, list(self.fields))

    def suite_seed(self, name: str) -> int:
        """Independent, reproducible seed for one suite."""
        ss = np.random.SeedSequence([self.seed, SUITES.index(name)])
        return int(ss.generate_state(1, dtype=np.uint32)[0])


def _over_budget(check: str, anchor: str, inst: str, size: int, budget: int) -> Record:
    return record(check, anchor, inst, "partial", detail=f"budget exceeded: {size} cases > {budget}")


# -- individual suites ---------------------------------------------------------


def algebra_suite(cfg: SuiteConfig) -> list[Record]:
    base = cfg.base
    inst = base.describe()
    out: list[Record] = []
    for k in sorted(set(base.fields), key=lambda k: k.q):
        out.append(record("field.frobenius-fixed", "finite-field", repr(k), frobenius_fixed(k)))
    anchor = "support-ideals"
    if base.order > cfg.budget:
        out.append(_over_budget("product.support-ideal", anchor, inst, base.order, cfg.budget))
    else:
        bad = []
        for f in base.elements():
            oracle = multiples_oracle(f)
            pred = principal_ideal(f).mask()
            if not np.array_equal(oracle, pred):
                bad.append(repr(f))
        out.append(record("product.support-ideal", anchor, inst, not bad,
                          detail=f"{base.order} generators against the multiples oracle",
                          counterexample=bad[:1] or None))
        # Units by search: f is a unit iff some product f·r is 1.
        C = base.codes
        has_inverse = (base.encode(base.vmul(C[:, None, :], C[None, :, :])) == base.one.index).any(axis=1)
        units_ok = all(f.is_unit() == bool(has_inverse[f.index]) for f in base.elements())
        out.append(record("product.unit-criterion", "units", inst, units_ok))
    out.append(record("product.maximal-generator", "maximal-ideals", inst,
                      all(check_maximal_generator(base, x) for x in base.labels)))
    quotient_ok = True
    for S in base.subsets():
        f = base.idempotent(S)
        target, proj = quotient_by(f)
        chk = check_code_morphism(base, target, proj.apply_codes, seed=cfg.suite_seed("algebra"))
        kernel = np.all(proj.apply_codes(base.codes) == 0, axis=1) if target.labels else np.ones(base.order, bool)
        quotient_ok &= chk.is_morphism and chk.surjective and np.array_equal(kernel, principal_ideal(f).mask())
    out.append(record("product.quotient", "support-ideals", inst, bool(quotient_ok),
                      detail="Λ/(f) is the projection off Su(f), for every idempotent f"))
    split_ok = True
    for S in base.subsets():
        for T in base.subsets():
            if not S & T:
                split_ok &= split_disjoint(base.idempotent(S), base.idempotent(T)).check.is_iso
    out.append(record("product.disjoint-split", "product-proposition", inst, bool(split_ok)))

    # Power-set ring over the same points.
    P = PowersetRing(cfg.points)
    pinst = "P(" + ",".join(cfg.points) + ")"
    if len(cfg.points) <= 4:
        out.append(record("powerset.ring-axioms", "powerset-ring", pinst, check_ring_axioms(P)))
        records = []
        for a, b in itertools.product(P.elements(), repeat=2):
            records.extend(corollary_suite(a, b))
        for name in sorted({r.check for r in records}):
            group = [r for r in records if r.check == name]
            fails = [r.instance for r in group if r.verdict == "fail"]
            verdict = "fail" if fails else ("partial" if any(r.verdict == "partial" for r in group) else "pass")
            out.append(record(name, group[0].anchor, pinst, verdict, detail=f"{len(group)} pairs (A, B)",
                              counterexample=fails[:1] or None))
    else:
        out.append(_over_budget("powerset.consequences", "powerset-corollary", pinst, P.order**2, 256))
    out.append(record("powerset.char-naturality", "powerset-functor", "|X|,|Y| ≤ 3", check_char_naturality(3)))
    return out


def ideals_suite(cfg: SuiteConfig) -> list[Record]:
    from .spectrum import enumerate_ideals, finiteness_suite

    base = cfg.base
    inst = base.describe()
    anchor = "radical-ideals"
    if base.order > min(cfg.budget, 4096):
        return [_over_budget("ideals.enumeration", anchor, inst, base.order, cfg.budget)]
    oracle = enumerate_ideals(base)
    out = [
        record("ideals.count", anchor, inst, len(oracle.ideals) == 2 ** len(base.labels),
               detail=f"{len(oracle.ideals)} ideals ({oracle.method})"),
        record("ideals.radical", anchor, inst, all(oracle.radical(m) == m for m in oracle.ideals)),
        record("ideals.support", anchor, inst, all(oracle.as_support_ideal(m) is not None for m in oracle.ideals)),
        record("ideals.primes-are-maximal", "prime-ideals", inst,
               sorted(oracle.primes) == sorted(oracle.maximals)
               == sorted(oracle.mask_of(maximal_ideal(base, x)) for x in base.labels)),
    ]
    out.extend(finiteness_suite(base))
    return out


def tensor_suite(cfg: SuiteConfig) -> list[Record]:
    from .tensor_local import QuotAlgebra, compare_tensor, tensor

    base = cfg.base
    inst = base.describe()
    anchor = "tensor-of-supports"
    subs = list(base.subsets())
    structural = all(
        tensor(QuotAlgebra.surviving(base, U), QuotAlgebra.surviving(base, V)).survivors == U & V
        for U in subs
        for V in subs
    )
    out = [record("tensor.structural", anchor, inst, structural, detail=f"{len(subs) ** 2} pairs")]
    checked = skipped = 0
    bad = []
    for U, V in itertools.product(subs, repeat=2):
        A, B = QuotAlgebra.surviving(base, U), QuotAlgebra.surviving(base, V)
        if A.ring.order * B.ring.order > cfg.budget * 4:
            skipped += 1
            continue
        checked += 1
        if not compare_tensor(A, B).is_iso:
            bad.append(f"{A.describe()} ⊗ {B.describe()}")
    verdict = (not bad) if not skipped else ("fail" if bad else "partial")
    detail = f"{checked} pairs against the presented tensor"
    if skipped:
        detail += f"; budget exceeded for {skipped}"
    out.append(record("tensor.oracle", anchor, inst, verdict, detail=detail, counterexample=bad[:1] or None))
    return out


def localization_suite(cfg: SuiteConfig) -> list[Record]:
    from .tensor_local import LOCALIZE_LIMIT, lemma_lambda_f, cofinite_localization_finite

    base = cfg.base
    inst = base.describe()
    anchor = "localization-at-f"
    if base.order > min(LOCALIZE_LIMIT, cfg.budget):
        out = [_over_budget("localization.lemma", anchor, inst, base.order, min(LOCALIZE_LIMIT, cfg.budget))]
    else:
        bad = [repr(f) for f in base.elements() if not lemma_lambda_f(f).is_iso]
        out = [record("localization.lemma", anchor, inst, not bad,
                      detail=f"Λ_f for all {base.order} elements", counterexample=bad[:1] or None)]
    out.extend(cofinite_localization_finite(base, seed=cfg.suite_seed("localization")))
    return out


def spectrum_suite(cfg: SuiteConfig) -> list[Record]:
    from .spectrum import basic_open, enumerate_ideals, oracle_basic_open, residue_field

    base = cfg.base
    inst = base.describe()
    anchor = "zariski-opens"
    if base.order > min(cfg.budget, 4096):
        return [_over_budget("spectrum.basic-open", anchor, inst, base.order, cfg.budget)]
    oracle = enumerate_ideals(base)
    point_of = {oracle.mask_of(maximal_ideal(base, x)): x for x in base.labels}
    elems = list(base.elements())
    opens_ok = all(
        frozenset(point_of[P] for P in oracle_basic_open(f, oracle)) == basic_open(f).points for f in elems
    )
    out = [record("spectrum.basic-open", anchor, inst, opens_ok, detail="D(f) against Su(f)")]
    inclusion = all(
        (basic_open(f) <= basic_open(g)) == (set(oracle_basic_open(f, oracle)) <= set(oracle_basic_open(g, oracle)))
        for f in elems
        for g in elems
    )
    out.append(record("spectrum.inclusion", anchor, inst, inclusion))
    if len(set(base.fields)) == 1:
        ok = all(residue_field(base, maximal_ideal(base, x)).ok for x in base.labels)
        out.append(record("spectrum.residue-field", "residue-fields", inst, ok,
                          detail=f"R/m_x has {base.fields[0].q} elements for every x"))
    else:
        ok = True
        for x in base.labels:
            target, proj = quotient_by(base.one - base.delta(x))
            ok &= target.order == base.field_of(x).q
        out.append(record("spectrum.residue-field", "residue-fields", inst, bool(ok),
                          detail="R/m_x ≅ K_x by projection"))
    return out


def scheme_suite(cfg: SuiteConfig) -> list[Record]:
    from .scheme_functor import check_affine_iff_finite, check_separated, check_sheaf

    base = cfg.base
    inst = base.describe()
    out = check_sheaf(base, seed=cfg.suite_seed("scheme"))
    if len(base.labels) <= 5:
        out.extend(check_separated(base))
    else:
        out.append(_over_budget("scheme.separated.surjective", "separated-criterion", inst, 4 ** len(base.labels), 4**5))
    if base.order <= 256:
        out.extend(check_affine_iff_finite(base))
    else:
        out.append(_over_budget("scheme.affine.eta-iso", "affine-iff-finite", inst, base.order, 256))
    return out


def duality_suite_for(cfg: SuiteConfig) -> list[Record]:
    from .scheme_functor import check_functor_laws, duality_suite, scheme_functor_suite

    out: list[Record] = []
    for K in sorted({parse_field(f) for f in cfg.fields} | {parse_field(2), parse_field(3)}, key=lambda k: k.q):
        size = 3 if K.q <= 3 else 2
        out.extend(duality_suite(K, size))
        out.extend(check_functor_laws(K, min(size, 2)))
        out.extend(scheme_functor_suite(K, 2))
    return out


def ev_periodic_suite(cfg: SuiteConfig) -> list[Record]:
    seed = cfg.suite_seed("ev_periodic")
    out: list[Record] = []
    for K in sorted({parse_field(f) for f in cfg.fields}, key=lambda k: k.q):
        rep = ev.lambda_prime_closure_test(K, trials=10_000, seed=seed)
        inst = f"eventually periodic over {K!r}"
        expected = K.q == 2
        cex = None
        if rep.counterexample:
            f, g = rep.counterexample
            cex = {"f": f.literal(), "g": g.literal(), "sum": (f + g).literal(),
                   "class": (f + g).support_class().tag}
        out.append(record("ev_periodic.remark", "lambda-prime-remark", inst, rep.closed == expected,
                          detail=rep.summary(), counterexample=cex))
        checks = ev.localization_trials(K, trials=200, seed=seed)
        out.append(record("ev_periodic.localization", "localization-at-cofinite", inst,
                          all(c.psi_phi and c.phi_psi for c in checks), detail=f"{len(checks)} fractions"))
        out.append(record("ev_periodic.pseudo-inverse", "localization-at-cofinite", inst,
                          all(c.pseudo_inverse_finite for c in checks)))
        one = ev.one(K)
        out.append(record("ev_periodic.finite-ideal-proper", "finiteness-equivalences", inst,
                          "partial" if not ev.in_finite_ideal(one) else "fail",
                          detail="1 has infinite support, so the finite-support ideal is proper (proxy)"))
    return out


RUNNERS = {
    "algebra": algebra_suite,
    "ideals": ideals_suite,
    "tensor": tensor_suite,
    "localization": localization_suite,
    "spectrum": spectrum_suite,
    "scheme": scheme_suite,
    "duality": duality_suite_for,
    "ev_periodic": ev_periodic_suite,
}


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    """Run the selected suites in canonical order; records are sorted on output."""
    records: list[Record] = []
    for name in cfg.suites:
        records.extend(RUNNERS[name](cfg))
    return SuiteReport(records, cfg.to_dict(), __version__)

"""Eventually periodic sequences over one finite field.

They form a subring of the infinite product ``∏_{n∈ℕ} K`` on which supports
are decidable: the support of a sequence is finite, cofinite, or neither
depending only on its repeating block.  This is enough to work with the
ideal of finite-support sequences, the multiplicative set of cofinite-support
sequences and the localization ``T⁻¹Λ ≅ Λ/𝔉(Λ)``.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import FieldMismatchError, PreconditionError, SizeLimitError
from .finite_field import FieldElem, FieldSpec, parse_field

MAX_PERIOD = 64
MAX_PREPERIOD = 256


class SupportClass(enum.Enum):
    FINITE = "finite"
    COFINITE = "cofinite"
    NEITHER = "neither"

    @property
    def tag(self) -> str:
        return self.value

    def __str__(self):
        return self.value


def _primitive_block(block: tuple[int, ...]) -> tuple[int, ...]:
    n = len(block)
    for d in range(1, n + 1):
        if n % d == 0 and block == block[:d] * (n // d):
            return block[:d]
    return block


def _codes(spec: FieldSpec, values: Iterable) -> tuple[int, ...]:
    return tuple(spec.element(v).value for v in values)


@dataclass(frozen=True)
class EvPeriodic:
    """The sequence ``pre[0], …, pre[-1], per[0], …, per[-1], per[0], …``.

    Values are stored as field-element codes.  Construction always yields
    the canonical form: ``per`` is primitive (not a power of a shorter block)
    and ``pre`` is as short as possible.
    """

    field: FieldSpec
    pre: tuple[int, ...] = ()
    per: tuple[int, ...] = (0,)

    def __post_init__(self):
        spec = parse_field(self.field)
        pre = _codes(spec, self.pre)
        per = _codes(spec, self.per)
        if not per:
            raise ValueError("repeating block must be nonempty")
        if len(per) > MAX_PERIOD:
            raise SizeLimitError(f"period {len(per)} exceeds cap {MAX_PERIOD}")
        if len(pre) > MAX_PREPERIOD:
            raise SizeLimitError(f"preperiod {len(pre)} exceeds cap {MAX_PREPERIOD}")
        per = _primitive_block(per)
        pre = list(pre)
        # Fold trailing preperiod entries into the cycle.
        while pre and pre[-1] == per[-1]:
            pre.pop()
            per = (per[-1],) + per[:-1]
        object.__setattr__(self, "field", spec)
        object.__setattr__(self, "pre", tuple(pre))
        object.__setattr__(self, "per", per)

    # -- construction helpers -------------------------------------------

    @classmethod
    def constant(cls, spec, value) -> EvPeriodic:
        return cls(spec, (), (value,))

    @classmethod
    def periodic(cls, spec, block: Sequence) -> EvPeriodic:
        return cls(spec, (), tuple(block))

    @classmethod
    def delta(cls, spec, n: int) -> EvPeriodic:
        """1 at index ``n``, 0 elsewhere."""
        return cls(spec, (0,) * n + (1,), (0,))

    @classmethod
    def parse(cls, text: str, spec) -> EvPeriodic:
        """Parse ``"pre;per"`` with comma-separated element codes, e.g. ``"0;2,1"``."""
        spec = parse_field(spec)
        if ";" not in text:
            raise ValueError(f"expected 'pre;per', got {text!r}")
        pre_s, per_s = text.split(";", 1)

        def items(s):
            s = s.strip()
            return [int(v) for v in s.split(",")] if s else []

        return cls(spec, tuple(items(pre_s)), tuple(items(per_s)))

    def literal(self) -> str:
        return ",".join(map(str, self.pre)) + ";" + ",".join(map(str, self.per))

    # -- evaluation -----------------------------------------------------

    def code_at(self, n: int) -> int:
        if n < len(self.pre):
            return self.pre[n]
        return self.per[(n - len(self.pre)) % len(self.per)]

    def __getitem__(self, n: int) -> FieldElem:
        return FieldElem(self.field, self.code_at(n))

    def window(self, length: int) -> list[int]:
        return [self.code_at(n) for n in range(length)]

    def show(self, length: int | None = None) -> str:
        length = length or len(self.pre) + 2 * len(self.per)
        return "(" + ",".join(repr(self[n]) for n in range(length)) + ",…)"

    def __repr__(self):
        return f"EvPeriodic({self.field!r}, pre={list(self.pre)}, per={list(self.per)})"

    # -- arithmetic -----------------------------------------------------

    def _combine(self, other, table) -> EvPeriodic:
        if not isinstance(other, EvPeriodic):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatchError()
        lead = max(len(self.pre), len(other.pre))
        period = math.lcm(len(self.per), len(other.per))
        if period > MAX_PERIOD:
            raise SizeLimitError(f"combined period {period} exceeds cap {MAX_PERIOD}")
        vals = [int(table[self.code_at(n), other.code_at(n)]) for n in range(lead + period)]
        return EvPeriodic(self.field, tuple(vals[:lead]), tuple(vals[lead:]))

    def __add__(self, other):
        return self._combine(other, self.field.tables[0])

    def __mul__(self, other):
        return self._combine(other, self.field.tables[1])

    def __neg__(self):
        neg = self.field.tables[2]
        return EvPeriodic(self.field, tuple(int(neg[v]) for v in self.pre), tuple(int(neg[v]) for v in self.per))

    def __sub__(self, other):
        if not isinstance(other, EvPeriodic):
            return NotImplemented
        return self + (-other)

    def support_class(self) -> SupportClass:
        if not any(self.per):
            return SupportClass.FINITE
        if all(self.per):
            return SupportClass.COFINITE
        return SupportClass.NEITHER

    def finite_support(self) -> list[int]:
        """The support, when it is finite."""
        if self.support_class() is not SupportClass.FINITE:
            raise PreconditionError("support is not finite")
        return [n for n, v in enumerate(self.pre) if v]

    def finite_cosupport(self) -> list[int]:
        """The complement of the support, when it is finite."""
        if self.support_class() is not SupportClass.COFINITE:
            raise PreconditionError("support is not cofinite")
        return [n for n, v in enumerate(self.pre) if not v]

    def pseudo_inverse(self) -> EvPeriodic:
        inv = self.field.tables[3]
        return EvPeriodic(self.field, tuple(int(inv[v]) for v in self.pre), tuple(int(inv[v]) for v in self.per))

    def tail(self) -> EvPeriodic:
        """Purely periodic sequence agreeing with ``self`` at every large index.

        This is the canonical representative of the class modulo finite
        support; the period keeps its phase relative to index 0.
        """
        shift = (-len(self.pre)) % len(self.per)
        return EvPeriodic(self.field, (), self.per[shift:] + self.per[:shift])


def combine(f: EvPeriodic, g: EvPeriodic, op: str) -> EvPeriodic:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def support_class(f: EvPeriodic) -> SupportClass:
    return f.support_class()


def pseudo_inverse(g: EvPeriodic) -> EvPeriodic:
    return g.pseudo_inverse()


def one(spec) -> EvPeriodic:
    return EvPeriodic.constant(spec, 1)


def zero(spec) -> EvPeriodic:
    return EvPeriodic.constant(spec, 0)


def in_finite_ideal(f: EvPeriodic) -> bool:
    return f.support_class() is SupportClass.FINITE


def in_cofinite_set(f: EvPeriodic) -> bool:
    return f.support_class() is SupportClass.COFINITE


def in_lambda_prime(f: EvPeriodic) -> bool:
    return f.support_class() is not SupportClass.NEITHER


def mod_finite_equal(f: EvPeriodic, g: EvPeriodic) -> bool:
    """True iff ``f - g`` has finite support."""
    if f.field != g.field:
        raise FieldMismatchError()
    return f.tail() == g.tail()


def localize_fraction(f: EvPeriodic, g: EvPeriodic) -> EvPeriodic:
    """Image of the fraction ``f/g`` in ``Λ/𝔉``: the tail of ``f·g*``."""
    if not in_cofinite_set(g):
        raise PreconditionError("denominator must have cofinite support")
    return (f * g.pseudo_inverse()).tail()


def fraction_witness(f1: EvPeriodic, g1: EvPeriodic, f2: EvPeriodic, g2: EvPeriodic) -> EvPeriodic | None:
    """A cofinite-support ``t`` with ``t·(f1·g2 − f2·g1) = 0``, or None.

    ``f1/g1`` and ``f2/g2`` are equal in ``T⁻¹Λ`` exactly when one exists.
    """
    for g in (g1, g2):
        if not in_cofinite_set(g):
            raise PreconditionError("denominators must have cofinite support")
    d = f1 * g2 - f2 * g1
    if not in_finite_ideal(d):
        return None
    # Vanish exactly on the (finite) support of d.
    t = EvPeriodic(d.field, tuple(0 if v else 1 for v in d.pre), (1,))
    assert in_cofinite_set(t) and not any((t * d).pre) and not any((t * d).per)
    return t


# -- Λ′ closure -------------------------------------------------------------


@dataclass
class ClosureReport:
    """Outcome of searching for two members of Λ′ whose sum leaves Λ′."""

    field: FieldSpec
    checked: int = 0
    violations: int = 0
    counterexample: tuple[EvPeriodic, EvPeriodic] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def closed(self) -> bool:
        return self.violations == 0

    def summary(self) -> str:
        if self.closed:
            return f"closed under addition over {self.field!r}: {self.checked} pairs, 0 violations"
        f, g = self.counterexample
        return (
            f"not closed over {self.field!r}: {f.show()} + {g.show()} = {(f + g).show()} "
            f"has support class {(f + g).support_class()}"
        )


def _words(spec: FieldSpec, max_len: int, alphabet: Sequence[int] | None = None):
    alphabet = list(range(spec.q)) if alphabet is None else list(alphabet)
    for n in range(1, max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def lambda_prime_members(spec: FieldSpec, max_period: int = 4, max_pre: int = 1) -> list[EvPeriodic]:
    """Distinct members of Λ′ with period ≤ ``max_period`` and preperiod ≤ ``max_pre``."""
    seen: dict[EvPeriodic, None] = {}
    for per in _words(spec, max_period):
        if any(per) and not all(per):
            continue
        for pl in range(max_pre + 1):
            for pre in itertools.product(range(spec.q), repeat=pl):
                seen.setdefault(EvPeriodic(spec, pre, per))
    return list(seen)


def _random_member(spec: FieldSpec, rng: np.random.Generator, max_period: int, max_pre: int) -> EvPeriodic:
    pre = tuple(int(v) for v in rng.integers(0, spec.q, rng.integers(0, max_pre + 1)))
    n = int(rng.integers(1, max_period + 1))
    if rng.random() < 0.5:
        per = (0,) * n
    else:
        per = tuple(int(v) for v in rng.integers(1, spec.q, n))
    return EvPeriodic(spec, pre, per)


def lambda_prime_closure_test(spec, trials: int = 10_000, seed: int = 42, max_period: int = 4) -> ClosureReport:
    """Search for ``f, g ∈ Λ′`` with ``f + g ∉ Λ′``.

    Deterministic phase first: translates ``1 + g`` of the unit, ordered by
    the word of ``1 + g``, then all pairs of small members.  Afterwards
    ``trials`` seeded random pairs.  Stops at the first violation.
    """
    spec = parse_field(spec)
    report = ClosureReport(spec)
    unit = one(spec)
    # 1 + g leaves Λ′ exactly when g hits -1 somewhere but not everywhere in its
    # period; enumerate h = 1 + g in lexicographic order.
    for word in _words(spec, max_period):
        h = EvPeriodic.periodic(spec, word)
        g = h - unit
        if not in_lambda_prime(g):
            continue
        report.checked += 1
        if not in_lambda_prime(unit + g):
            report.violations += 1
            report.counterexample = (unit, g)
            return report
    members = lambda_prime_members(spec, max_period)
    for f, g in itertools.combinations_with_replacement(members, 2):
        report.checked += 1
        if not in_lambda_prime(f + g):
            report.violations += 1
            report.counterexample = (f, g)
            return report
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        f = _random_member(spec, rng, max_period, 4)
        g = _random_member(spec, rng, max_period, 4)
        report.checked += 1
        if not in_lambda_prime(f + g):
            report.violations += 1
            report.counterexample = (f, g)
            return report
    return report


def random_sequence(spec: FieldSpec, rng: np.random.Generator, max_pre: int = 6, max_period: int = 4) -> EvPeriodic:
    pre = tuple(int(v) for v in rng.integers(0, spec.q, rng.integers(0, max_pre + 1)))
    per = tuple(int(v) for v in rng.integers(0, spec.q, rng.integers(1, max_period + 1)))
    return EvPeriodic(spec, pre, per)


def random_cofinite(spec: FieldSpec, rng: np.random.Generator, max_pre: int = 6, max_period: int = 4) -> EvPeriodic:
    pre = tuple(int(v) for v in rng.integers(0, spec.q, rng.integers(0, max_pre + 1)))
    per = tuple(int(v) for v in rng.integers(1, spec.q, rng.integers(1, max_period + 1)))
    return EvPeriodic(spec, pre, per)


@dataclass
class LocalizationCheck:
    """Round trips between ``Λ/𝔉`` and ``T⁻¹Λ`` on one fraction ``f/g``."""

    f: EvPeriodic
    g: EvPeriodic
    psi_phi: bool
    phi_psi: bool
    pseudo_inverse_finite: bool

    @property
    def ok(self) -> bool:
        return self.psi_phi and self.phi_psi and self.pseudo_inverse_finite


def check_localization(f: EvPeriodic, g: EvPeriodic) -> LocalizationCheck:
    spec = f.field
    unit = one(spec)
    psi_phi = mod_finite_equal(localize_fraction(f, unit), f)
    # φ(ψ(f/g)) = (f·g*)/1 must equal f/g in T⁻¹Λ.
    rep = f * g.pseudo_inverse()
    phi_psi = fraction_witness(rep, unit, f, g) is not None and mod_finite_equal(localize_fraction(f * g, g), f)
    pinv = in_finite_ideal(unit - g * g.pseudo_inverse())
    return LocalizationCheck(f, g, psi_phi, phi_psi, pinv)


def localization_trials(spec, trials: int = 200, seed: int = 42) -> list[LocalizationCheck]:
    spec = parse_field(spec)
    rng = np.random.default_rng(seed)
    return [check_localization(random_sequence(spec, rng), random_cofinite(spec, rng)) for _ in range(trials)]

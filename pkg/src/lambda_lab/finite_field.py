"""Exact arithmetic in small finite fields GF(p^k).

Elements are stored as integers encoding their coefficient vector in base
``p`` (coefficient of ``t**i`` is digit ``i``).  Every field is capped at 64
elements, so the full addition and multiplication tables are precomputed
once per field and all arithmetic is table lookup.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import FieldMismatchError

MAX_ORDER = 64

# Low-degree coefficient first, monic.
BUILTIN_MODULI = {
    (2, 2): (1, 1, 1),  # t^2 + t + 1
    (2, 3): (1, 1, 0, 1),  # t^3 + t + 1
    (3, 2): (1, 0, 1),  # t^2 + 1
    (5, 2): (2, 0, 1),  # t^2 + 2
    (3, 3): (1, 2, 0, 1),  # t^3 + 2t + 1
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k``, or None if q is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None


def _trim(poly: list[int]) -> list[int]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_rem(num: Sequence[int], den: Sequence[int], p: int) -> list[int]:
    """Remainder of ``num`` modulo monic ``den`` over GF(p)."""
    rem = _trim([c % p for c in num])
    d = len(den) - 1
    while len(rem) - 1 >= d and rem:
        shift = len(rem) - 1 - d
        lead = rem[-1]
        for i, c in enumerate(den):
            rem[shift + i] = (rem[shift + i] - lead * c) % p
        _trim(rem)
    return rem


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive factor search: no monic polynomial of degree 1..k//2 divides."""
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_rem(modulus, (*low, 1), p):
                return False
    return True


def first_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of degree k over GF(p)."""
    for low in itertools.product(range(p), repeat=k):
        cand = (*reversed(low), 1)
        if is_irreducible(cand, p):
            return cand
    raise AssertionError(f"no irreducible polynomial of degree {k} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    """The finite field GF(p^k) = GF(p)[t] / (modulus).

    ``modulus`` is a monic coefficient list, lowest degree first.  It is
    ignored (normalised to the empty tuple) when ``k == 1``.
    """

    p: int
    k: int = 1
    modulus: tuple[int, ...] = ()

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.k < 1:
            raise ValueError("extension degree must be at least 1")
        if self.p**self.k > MAX_ORDER:
            raise ValueError(f"{self.p}^{self.k} exceeds the field size cap {MAX_ORDER}")
        if self.k == 1:
            object.__setattr__(self, "modulus", ())
            return
        mod = tuple(int(c) % self.p for c in self.modulus)
        if len(mod) != self.k + 1 or mod[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {self.k}")
        if not is_irreducible(mod, self.p):
            raise ValueError(f"modulus {mod} is reducible over GF({self.p})")
        object.__setattr__(self, "modulus", mod)

    @classmethod
    def of_order(cls, q: int) -> FieldSpec:
        pk = prime_power(q)
        if pk is None or q > MAX_ORDER:
            raise ValueError(f"{q} is not a prime power ≤ {MAX_ORDER}")
        p, k = pk
        if k == 1:
            return cls(p)
        return cls(p, k, BUILTIN_MODULI.get((p, k)) or first_irreducible(p, k))

    @property
    def q(self) -> int:
        return self.p**self.k

    order = q

    @property
    def name(self) -> str:
        return str(self.p) if self.k == 1 else f"{self.p}^{self.k}"

    def __repr__(self):
        return f"GF({self.q})"

    # -- tables ---------------------------------------------------------

    def _coeffs(self, v: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            v, r = divmod(v, self.p)
            out.append(r)
        return tuple(out)

    def _encode(self, coeffs: Sequence[int]) -> int:
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    def _poly_mul(self, a: int, b: int) -> int:
        ca, cb = self._coeffs(a), self._coeffs(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(ca):
            for j, y in enumerate(cb):
                prod[i + j] += x * y
        if self.k > 1:
            prod = _poly_rem(prod, self.modulus, self.p)
        return self._encode(prod)

    @cached_property
    def tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """``(add, mul, neg, inv)`` lookup tables over element codes; ``inv[0] = 0``."""
        q = self.q
        coeffs = [self._coeffs(v) for v in range(q)]
        add = np.array(
            [[self._encode([x + y for x, y in zip(ca, cb)]) for cb in coeffs] for ca in coeffs],
            dtype=np.int64,
        )
        mul = np.array([[self._poly_mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
        neg = np.array([self._encode([-x for x in c]) for c in coeffs], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            hits = np.flatnonzero(mul[a] == 1)
            if len(hits) != 1:
                raise AssertionError(f"{a} has no unique inverse in {self!r}")
            inv[a] = hits[0]
        for t in (add, mul, neg, inv):
            t.setflags(write=False)
        return add, mul, neg, inv

    # -- elements -------------------------------------------------------

    def element(self, value: int | Sequence[int]) -> FieldElem:
        """Element from its integer code or its coefficient vector."""
        if isinstance(value, FieldElem):
            if value.spec != self:
                raise FieldMismatchError()
            return value
        if isinstance(value, (int, np.integer)):
            v = int(value)
            if not 0 <= v < self.q:
                v = v % self.p if self.k == 1 else v
            if not 0 <= v < self.q:
                raise ValueError(f"code {value} out of range for {self!r}")
            return FieldElem(self, v)
        coeffs = list(value)
        if len(coeffs) > self.k:
            raise ValueError(f"too many coefficients for {self!r}")
        return FieldElem(self, self._encode(coeffs))

    def __call__(self, value) -> FieldElem:
        return self.element(value)

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    @property
    def gen(self) -> FieldElem:
        """The class of ``t``; generates the field as a ring over its prime field."""
        return FieldElem(self, self.p if self.k > 1 else 1)

    def elements(self) -> Iterator[FieldElem]:
        return (FieldElem(self, v) for v in range(self.q))

    def __iter__(self):
        return self.elements()

    def __len__(self):
        return self.q


@dataclass(frozen=True)
class FieldElem:
    """Immutable element of a :class:`FieldSpec`."""

    spec: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec._coeffs(self.value)

    def _check(self, other) -> FieldElem:
        if isinstance(other, (int, np.integer)):
            return self.spec.element(int(other))
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.spec != self.spec:
            raise FieldMismatchError()
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.spec, int(self.spec.tables[0][self.value, other.value]))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.spec, int(self.spec.tables[2][self.value]))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.spec, int(self.spec.tables[1][self.value, other.value]))

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        if self.value == 0:
            raise ZeroDivisionError("division by zero")
        return FieldElem(self.spec, int(self.spec.tables[3][self.value]))

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.spec.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        if self.spec.k == 1:
            return str(self.value)
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(mono if c == 1 and mono else f"{c}{mono}")
        return " + ".join(terms) if terms else "0"


def add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def inv(a: FieldElem) -> FieldElem:
    return a.inverse()


def frobenius_fixed(spec: FieldSpec) -> bool:
    """True iff every element satisfies ``a**q == a``."""
    return all(a ** spec.q == a for a in spec.elements())


_FIELD_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_field(text: str | int, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Parse ``"p"``, ``"p^k"`` or a prime-power order such as ``"4"``.

    A custom modulus (coefficient list, lowest degree first) overrides the
    built-in choice.
    """
    if isinstance(text, FieldSpec):
        return text
    m = _FIELD_RE.match(str(text))
    if not m:
        raise ValueError(f"{text!r} is not a field description")
    base = int(m.group(1))
    exp = int(m.group(2)) if m.group(2) else 1
    q = base**exp
    pk = prime_power(q)
    if pk is None or q > MAX_ORDER or (exp > 1 and not is_prime(base)):
        raise ValueError(f"{text} is not a prime power ≤ {MAX_ORDER}")
    if modulus is not None:
        return FieldSpec(pk[0], pk[1], tuple(modulus))
    return FieldSpec.of_order(q)


GF2 = FieldSpec(2)
GF3 = FieldSpec(3)
GF4 = FieldSpec.of_order(4)
GF5 = FieldSpec(5)
GF8 = FieldSpec.of_order(8)
GF9 = FieldSpec.of_order(9)
GF25 = FieldSpec.of_order(25)
GF27 = FieldSpec.of_order(27)

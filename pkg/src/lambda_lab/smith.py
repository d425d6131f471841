"""Finitely presented abelian groups via integer Smith normal form.

A group is given by ``n`` generators and a list of integer relations (sparse
rows).  Relations that contain a unit coefficient are used first to
eliminate generators outright, which keeps the dense Smith reduction that
follows very small for the presentations built by the tensor oracle.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import SizeLimitError

DEFAULT_BUDGET = 5_000_000


class _Budget:
    def __init__(self, steps: int | None):
        self.left = DEFAULT_BUDGET if steps is None else steps

    def spend(self, n: int = 1):
        self.left -= n
        if self.left < 0:
            raise SizeLimitError("step budget exhausted")


def smith_normal_form(rows: list[list[int]], ncols: int, budget: int | None = None):
    """Diagonalise ``A`` by unimodular row and column operations.

    Returns ``(diag, V)`` where ``diag[i]`` is the i-th invariant factor
    (0 for free directions, ``len(diag) == ncols``) and ``V`` is the
    accumulated column transform: the class of a row vector ``v`` in
    ``Z^ncols / rowspace(A)`` has coordinates ``(v V)_i mod diag[i]``.
    """
    b = _Budget(budget)
    A = [list(r) for r in rows if any(r)]
    m = len(A)
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def col_op(dst, src, q):
        # column dst -= q * column src
        for row in A:
            if row[src]:
                row[dst] -= q * row[src]
        for row in V:
            if row[src]:
                row[dst] -= q * row[src]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    diag: list[int] = []
    t = 0
    while t < min(m, ncols):
        pick = None
        best = 0
        for i in range(t, m):
            row = A[i]
            for j in range(t, ncols):
                v = row[j]
                if v and (pick is None or abs(v) < best):
                    pick, best = (i, j), abs(v)
                    if best == 1:
                        break
            if best == 1:
                break
        b.spend(m * ncols)
        if pick is None:
            break
        A[t], A[pick[0]] = A[pick[0]], A[t]
        if pick[1] != t:
            swap_cols(t, pick[1])
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, ncols):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        col_op(j, t, q)
                    if A[t][j]:
                        clean = False
            b.spend(m + ncols)
            if not clean:
                # Move the smallest leftover in the pivot row/column onto the diagonal.
                cands = [(abs(A[i][t]), i, None) for i in range(t + 1, m) if A[i][t]]
                cands += [(abs(A[t][j]), None, j) for j in range(t + 1, ncols) if A[t][j]]
                _, i, j = min(cands, key=lambda c: c[0])
                if i is not None:
                    A[t], A[i] = A[i], A[t]
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, ncols) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
        diag.append(A[t][t])
        t += 1
    diag += [0] * (ncols - len(diag))
    return diag, V


@dataclass
class PresentedGroup:
    """``Z^n / <relations>`` decomposed as ``⊕ Z/d_i`` (``d_i = 0`` means a free factor)."""

    invariants: tuple[int, ...]
    _coords: list[tuple[int, ...]]

    @property
    def is_finite(self) -> bool:
        return all(self.invariants)

    @property
    def order(self) -> int | None:
        if not self.is_finite:
            return None
        out = 1
        for d in self.invariants:
            out *= d
        return out

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.invariants)

    def reduce(self, v: Iterable[int]) -> tuple[int, ...]:
        return tuple(x % d if d else x for x, d in zip(v, self.invariants))

    def generator(self, j: int) -> tuple[int, ...]:
        return self._coords[j]

    def add(self, a, b) -> tuple[int, ...]:
        return self.reduce(x + y for x, y in zip(a, b))

    def elements(self) -> Iterator[tuple[int, ...]]:
        if not self.is_finite:
            raise ValueError("group is infinite")

        def rec(i):
            if i == len(self.invariants):
                yield ()
                return
            for rest in rec(i + 1):
                for x in range(self.invariants[i]):
                    yield (x, *rest)

        return rec(0)


def present(
    ngens: int, relations: Iterable[Mapping[int, int]], budget: int | None = None
) -> PresentedGroup:
    """Compute the structure of ``Z^ngens`` modulo the given sparse relations."""
    b = _Budget(budget)
    rows: dict[int, dict[int, int]] = {}
    colrows: dict[int, set[int]] = defaultdict(set)
    version: dict[int, int] = {}
    heap: list[tuple[int, int, int]] = []
    seen = set()
    for rel in relations:
        row = {j: v for j, v in rel.items() if v}
        if not row:
            continue
        key = tuple(sorted(row.items()))
        if key in seen:
            continue
        seen.add(key)
        rid = len(rows)
        rows[rid] = row
        version[rid] = 0
        for j in row:
            colrows[j].add(rid)
        heapq.heappush(heap, (len(row), rid, 0))

    subst: list[tuple[int, int, dict[int, int]]] = []
    eliminated: set[int] = set()
    while heap:
        _, rid, ver = heapq.heappop(heap)
        if rid not in rows or version[rid] != ver:
            continue
        row = rows[rid]
        units = [j for j, v in row.items() if v in (1, -1)]
        if not units:
            continue
        c = min(units, key=lambda j: (len(colrows[j]), j))
        s = row[c]
        del rows[rid]
        for j in row:
            colrows[j].discard(rid)
        for r2 in list(colrows[c]):
            row2 = rows[r2]
            factor = row2[c] * s
            for j, v in row.items():
                nv = row2.get(j, 0) - factor * v
                if nv:
                    if j not in row2:
                        colrows[j].add(r2)
                    row2[j] = nv
                elif j in row2:
                    del row2[j]
                    colrows[j].discard(r2)
            b.spend(len(row))
            version[r2] += 1
            if row2:
                heapq.heappush(heap, (len(row2), r2, version[r2]))
            else:
                del rows[r2]
        subst.append((c, s, {j: v for j, v in row.items() if j != c}))
        eliminated.add(c)

    keep = [j for j in range(ngens) if j not in eliminated]
    pos = {j: i for i, j in enumerate(keep)}
    dense = []
    for row in rows.values():
        r = [0] * len(keep)
        for j, v in row.items():
            r[pos[j]] = v
        dense.append(r)
    diag, V = smith_normal_form(dense, len(keep), budget=b.left)
    nontrivial = [i for i, d in enumerate(diag) if d != 1]
    invariants = tuple(diag[i] for i in nontrivial)

    def red(v):
        return tuple(x % d if d else x for x, d in zip(v, invariants))

    coords: list[tuple[int, ...] | None] = [None] * ngens
    for j in keep:
        coords[j] = red(V[pos[j]][i] for i in nontrivial)
    for c, s, other in reversed(subst):
        acc = [0] * len(invariants)
        for j, v in other.items():
            for i, x in enumerate(coords[j]):
                acc[i] -= s * v * x
        coords[c] = red(acc)
    return PresentedGroup(invariants, coords)

"""Grothendieck group of a finite pointed abelian semigroup.

Elements are pairs (g0, g1) of semigroup elements, identified when some k
balances g0 + h1 + k = h0 + g1 + k; addition is componentwise, the
positives are the classes of (g, 0) and the point is (u, 0).  Semigroups
without a neutral element get one adjoined first, which does not change
the resulting group.  The result is a finite ordered pointed structure
usable by the evaluator (carrier, add, leq, unit).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ordarena.logic.semantics import FinitePointedSemigroup


@dataclass(frozen=True)
class GrothendieckGroup:
    source: FinitePointedSemigroup
    class_reps: tuple[tuple[int, int], ...]       # canonical pair per class
    class_of_pair_map: dict = field(repr=False, hash=False, compare=False, default=None)
    add_table: tuple[tuple[int, ...], ...] = ()
    neg_map: tuple[int, ...] = ()
    positives: frozenset[int] = frozenset()
    point: int = 0

    def carrier(self):
        return range(len(self.class_reps))

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_map[a]

    def leq(self, a: int, b: int) -> bool:
        return self.add(b, self.neg(a)) in self.positives

    @property
    def unit(self) -> int:
        return self.point

    @property
    def size(self) -> int:
        return len(self.class_reps)

    def class_of_pair(self, g0: int, g1: int) -> int:
        """Class of the pair of original semigroup elements (g0, g1)."""
        return self.class_of_pair_map[(g0, g1)]


def _with_neutral(h: FinitePointedSemigroup) -> tuple[list[list[int]], int, int]:
    """Addition table extended with a neutral element when missing; returns
    (table, zero index, original carrier size)."""
    m = h.size
    e = h.neutral()
    if e is not None:
        return [list(row) for row in h.table], e, m
    table = [list(row) + [a] for a, row in enumerate(h.table)]
    table.append(list(range(m)) + [m])
    return table, m, m


def grothendieck(h: FinitePointedSemigroup) -> GrothendieckGroup:
    table, zero, m0 = _with_neutral(h)
    m = len(table)

    def add(a, b):
        return table[a][b]

    def equivalent(p, q):
        g0, g1 = p
        h0, h1 = q
        left_base = add(g0, h1)
        right_base = add(h0, g1)
        return any(add(left_base, k) == add(right_base, k) for k in range(m))

    pairs = [(a, b) for a in range(m) for b in range(m)]
    reps: list[tuple[int, int]] = []
    cls: dict[tuple[int, int], int] = {}
    for p in pairs:
        for idx, r in enumerate(reps):
            if equivalent(p, r):
                cls[p] = idx
                break
        else:
            cls[p] = len(reps)
            reps.append(p)

    k = len(reps)
    add_table = tuple(
        tuple(cls[(add(reps[a][0], reps[b][0]), add(reps[a][1], reps[b][1]))] for b in range(k))
        for a in range(k)
    )
    neg_map = tuple(cls[(reps[a][1], reps[a][0])] for a in range(k))
    positives = frozenset(cls[(g, zero)] for g in range(m))
    point = cls[(h.point, zero)]
    pair_map = {(a, b): cls[(a, b)] for a in range(m0) for b in range(m0)}
    return GrothendieckGroup(h, tuple(reps), pair_map, add_table, neg_map, positives, point)

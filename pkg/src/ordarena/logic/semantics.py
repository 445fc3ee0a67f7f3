"""Finite pointed semigroups and Tarski evaluation by exhaustive
quantification."""

from __future__ import annotations

from dataclasses import dataclass

from ordarena.logic import ast
from ordarena.logic.ast import And, CountableAnd, CountableOr, Eq, Exists, Forall, Le, Not, Or, Term


class EvalError(ValueError):
    pass


class SortError(EvalError):
    pass


@dataclass(frozen=True)
class FinitePointedSemigroup:
    """Carrier {0..m-1}, commutative associative table, distinguished point."""

    table: tuple[tuple[int, ...], ...]
    point: int
    name: str = ""

    def __post_init__(self):
        m = len(self.table)
        if any(len(row) != m for row in self.table):
            raise ValueError("table must be square")
        if not (0 <= self.point < m):
            raise ValueError("distinguished point outside carrier")
        for a in range(m):
            for b in range(m):
                if self.table[a][b] != self.table[b][a]:
                    raise ValueError("table is not commutative")
                for c in range(m):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise ValueError("table is not associative")

    @property
    def size(self) -> int:
        return len(self.table)

    def carrier(self):
        return range(len(self.table))

    def add(self, a: int, b: int) -> int:
        return self.table[a][b]

    @property
    def unit(self) -> int:
        return self.point

    def neutral(self):
        """The neutral element if one exists, else None."""
        for e in self.carrier():
            if all(self.add(e, x) == x for x in self.carrier()):
                return e
        return None


def cyclic_group(m: int, point: int = 1) -> FinitePointedSemigroup:
    table = tuple(tuple((a + b) % m for b in range(m)) for a in range(m))
    return FinitePointedSemigroup(table, point % m, name=f"Z/{m}")


def truncated_addition(m: int, point: int = 1) -> FinitePointedSemigroup:
    """{0..m-1} with a + b capped at m-1 (non-cancellative for m >= 2)."""
    table = tuple(tuple(min(a + b, m - 1) for b in range(m)) for a in range(m))
    return FinitePointedSemigroup(table, min(point, m - 1), name=f"N capped at {m - 1}")


def max_semilattice(m: int, point: int | None = None) -> FinitePointedSemigroup:
    table = tuple(tuple(max(a, b) for b in range(m)) for a in range(m))
    return FinitePointedSemigroup(table, m - 1 if point is None else point, name=f"max on {m}")


def shifted_truncated(m: int, point: int = 0) -> FinitePointedSemigroup:
    """{1..m} with capped addition, relabeled to {0..m-1}: no neutral element."""
    table = tuple(tuple(min(a + b + 1, m - 1) for b in range(m)) for a in range(m))
    return FinitePointedSemigroup(table, point, name=f"shifted capped {m}")


def product(h1: FinitePointedSemigroup, h2: FinitePointedSemigroup) -> FinitePointedSemigroup:
    m1, m2 = h1.size, h2.size
    def enc(a, b):
        return a * m2 + b
    table = tuple(
        tuple(enc(h1.add(a1, b1), h2.add(a2, b2)) for b1 in range(m1) for b2 in range(m2))
        for a1 in range(m1) for a2 in range(m2)
    )
    return FinitePointedSemigroup(table, enc(h1.point, h2.point), name=f"{h1.name} x {h2.name}")


def pointed_semigroup_families(max_size: int = 6):
    """A small zoo of pointed abelian semigroups up to the given size,
    including non-cancellative and neutral-free examples."""
    out = []
    for m in range(1, max_size + 1):
        out.append(cyclic_group(m, point=1 % m))
        if m >= 2:
            out.append(truncated_addition(m))
            out.append(max_semilattice(m))
            out.append(shifted_truncated(m))
    for m1 in (2, 3):
        for m2 in (2, 3):
            if m1 * m2 <= max_size:
                out.append(product(cyclic_group(m1), cyclic_group(m2)))
                out.append(product(cyclic_group(m1), truncated_addition(m2)))
    return [h for h in out if h.size <= max_size]


# -- evaluation ------------------------------------------------------------------


def _term_value(t: Term, model, env: dict[int, object]):
    acc = None
    for v, mult in t.vars:
        if v not in env:
            raise EvalError(f"unbound variable x{v}")
        for _ in range(mult):
            acc = env[v] if acc is None else model.add(acc, env[v])
    for _ in range(t.units):
        acc = model.unit if acc is None else model.add(acc, model.unit)
    return acc


def evaluate(phi: ast.Formula, model, env: dict[int, object] | None = None) -> bool:
    """Tarski semantics over a finite model; quantifiers are exhaustive."""
    env = dict(env or {})
    return _eval(phi, model, env)


def _eval(phi, model, env) -> bool:
    if isinstance(phi, Eq):
        return _term_value(phi.left, model, env) == _term_value(phi.right, model, env)
    if isinstance(phi, Le):
        if not hasattr(model, "leq"):
            raise SortError("<= is not part of this model's language")
        return model.leq(_term_value(phi.left, model, env), _term_value(phi.right, model, env))
    if isinstance(phi, Not):
        return not _eval(phi.body, model, env)
    if isinstance(phi, And):
        return all(_eval(c, model, env) for c in phi.children)
    if isinstance(phi, Or):
        return any(_eval(c, model, env) for c in phi.children)
    if isinstance(phi, (CountableAnd, CountableOr)):
        raise EvalError("schema nodes represent countable families and cannot be evaluated")
    if isinstance(phi, (Exists, Forall)):
        missing = object()
        saved = env.get(phi.var, missing)
        hit = isinstance(phi, Forall)
        for x in model.carrier():
            env[phi.var] = x
            value = _eval(phi.body, model, env)
            if value != hit:
                hit = value
                break
        if saved is missing:
            env.pop(phi.var, None)
        else:
            env[phi.var] = saved
        return hit
    raise TypeError(f"not a formula: {phi!r}")

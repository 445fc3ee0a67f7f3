"""Translation from ordered-group formulas to semigroup formulas.

Each variable x splits into a difference pair (y_{2v}, y_{2v+1}); writing
L and R for the two sides of an atomic formula and T0/T1 for the tuple
components of a term T, the translations are

    L = R   -->   exists z ( L0 + R1 + z  =  L1 + R0 + z )
    L <= R  -->   exists z, w ( L0 + R1 + z + w  =  L1 + R0 + z )

and each quantifier becomes a pair of quantifiers over the components, so
ranks obey qr(psi) <= 2*qr(phi) + 2 exactly, via ordinal arithmetic.
Schema nodes translate to schema nodes with the conservative supplied rank
2*rank + 2 (the supremum is treated as attained).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ordarena import ordinal
from ordarena.logic.ast import (
    LANG_K0,
    LANG_V,
    And,
    CountableAnd,
    CountableOr,
    Eq,
    Exists,
    Forall,
    Formula,
    Le,
    Not,
    Or,
    Term,
    free_vars,
    qr,
    term,
    well_sorted,
)
from ordarena.logic.groth import grothendieck
from ordarena.logic.semantics import FinitePointedSemigroup, evaluate


def _max_var(phi: Formula) -> int:
    if isinstance(phi, (Eq, Le)):
        ids = [v for v, _ in phi.left.vars] + [v for v, _ in phi.right.vars]
        return max(ids, default=-1)
    if isinstance(phi, Not):
        return _max_var(phi.body)
    if isinstance(phi, (And, Or)):
        return max(_max_var(c) for c in phi.children)
    if isinstance(phi, (CountableAnd, CountableOr)):
        return max(_max_var(c) for c in phi.prototypes)
    if isinstance(phi, (Exists, Forall)):
        return max(phi.var, _max_var(phi.body))
    raise TypeError(f"not a formula: {phi!r}")


class _Fresh:
    def __init__(self, start: int):
        self.next = start

    def take(self) -> int:
        v = self.next
        self.next += 1
        return v


def _component_counts(t: Term, component: int) -> dict[int, int]:
    """Multiplicities of the component variables y_{2v+component}."""
    return {2 * v + component: m for v, m in t.vars}


def _merge(*count_maps: dict[int, int]) -> list[tuple[int, int]]:
    acc: dict[int, int] = {}
    for counts in count_maps:
        for v, m in counts.items():
            acc[v] = acc.get(v, 0) + m
    return sorted(acc.items())


def _atomic(left: Term, right: Term, is_le: bool, fresh: _Fresh) -> Formula:
    z = fresh.take()
    lhs_vars = _merge(_component_counts(left, 0), _component_counts(right, 1), {z: 1})
    rhs_vars = _merge(_component_counts(left, 1), _component_counts(right, 0), {z: 1})
    if not is_le:
        body = Eq(Term(tuple(lhs_vars), left.units), Term(tuple(rhs_vars), right.units))
        return Exists(z, body)
    w = fresh.take()
    lhs_vars = _merge(dict(lhs_vars), {w: 1})
    body = Eq(Term(tuple(lhs_vars), left.units), Term(tuple(rhs_vars), right.units))
    return Exists(z, Exists(w, body))


def _family_rank(rank: ordinal.Ord) -> ordinal.Ord:
    return ordinal.add(ordinal.mul(ordinal.fin(2), rank), ordinal.fin(2))


def translate_k0_to_v(phi: Formula) -> Formula:
    """The semigroup formula psi with G(H) |= phi(g) iff H |= psi(g0, g1)."""
    fresh = _Fresh(2 * (_max_var(phi) + 1))
    return _translate(phi, fresh)


def _translate(phi: Formula, fresh: _Fresh) -> Formula:
    if isinstance(phi, Eq):
        return _atomic(phi.left, phi.right, False, fresh)
    if isinstance(phi, Le):
        return _atomic(phi.left, phi.right, True, fresh)
    if isinstance(phi, Not):
        return Not(_translate(phi.body, fresh))
    if isinstance(phi, And):
        return And(tuple(_translate(c, fresh) for c in phi.children))
    if isinstance(phi, Or):
        return Or(tuple(_translate(c, fresh) for c in phi.children))
    if isinstance(phi, CountableAnd):
        return CountableAnd(tuple(_translate(c, fresh) for c in phi.prototypes),
                            _family_rank(phi.rank))
    if isinstance(phi, CountableOr):
        return CountableOr(tuple(_translate(c, fresh) for c in phi.prototypes),
                           _family_rank(phi.rank))
    if isinstance(phi, Exists):
        body = _translate(phi.body, fresh)
        return Exists(2 * phi.var, Exists(2 * phi.var + 1, body))
    if isinstance(phi, Forall):
        body = _translate(phi.body, fresh)
        return Forall(2 * phi.var, Forall(2 * phi.var + 1, body))
    raise TypeError(f"not a formula: {phi!r}")


@dataclass
class TranslationReport:
    samples: int
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_translation(phi: Formula, h: FinitePointedSemigroup, samples: int = 25,
                       seed: int = 0) -> TranslationReport:
    """Dual evaluation of phi on G(H) against its translation on H over
    sampled assignments; any mismatch is a defect and lands in the report."""
    if not well_sorted(phi, LANG_K0):
        raise ValueError("phi must be a formula of the ordered-group language")
    psi = translate_k0_to_v(phi)
    assert well_sorted(psi, LANG_V)
    g = grothendieck(h)
    fv = sorted(free_vars(phi))
    rng = random.Random(seed)
    report = TranslationReport(samples=samples)
    for _ in range(samples):
        pair_per_var = {v: (rng.randrange(h.size), rng.randrange(h.size)) for v in fv}
        env_g = {v: g.class_of_pair(p0, p1) for v, (p0, p1) in pair_per_var.items()}
        env_h = {}
        for v, (p0, p1) in pair_per_var.items():
            env_h[2 * v] = p0
            env_h[2 * v + 1] = p1
        lhs = evaluate(phi, g, env_g)
        rhs = evaluate(psi, h, env_h)
        if lhs != rhs:
            report.mismatches.append({
                "assignment": pair_per_var,
                "group_value": lhs,
                "semigroup_value": rhs,
            })
    return report


# -- seeded formula generator ----------------------------------------------------


def random_formula(rng: random.Random, max_qr: int, arity: int, lang: str = LANG_K0,
                   allow_schema: bool = False, depth: int = 3) -> Formula:
    """Seeded random formula with quantifier rank at most ``max_qr`` and free
    variables among x0..x{arity-1}."""
    bound: list[int] = []

    def rand_term() -> Term:
        pool = list(range(arity)) + bound
        n = rng.randint(0, 2) if pool else 0
        vs = [rng.choice(pool) for _ in range(n)]
        units = rng.randint(0, 2)
        if not vs and units == 0:
            units = 1
        return term(*vs, units=units)

    def go(budget: int, d: int) -> Formula:
        choices = ["atom"]
        if d > 0:
            choices += ["not", "and", "or"]
            if budget > 0:
                choices += ["exists", "forall", "exists", "forall"]
            if allow_schema and budget > 0 and d == depth:
                choices += ["schema"]
        kind = rng.choice(choices)
        if kind == "atom":
            t1, t2 = rand_term(), rand_term()
            if lang == LANG_K0 and rng.random() < 0.5:
                return Le(t1, t2)
            return Eq(t1, t2)
        if kind == "not":
            return Not(go(budget, d - 1))
        if kind in ("and", "or"):
            k = rng.randint(1, 3)
            children = tuple(go(budget, d - 1) for _ in range(k))
            return And(children) if kind == "and" else Or(children)
        if kind == "schema":
            k = rng.randint(1, 3)
            protos = tuple(go(min(budget - 1, 1), d - 1) for _ in range(k))
            return (CountableAnd if rng.random() < 0.5 else CountableOr)(protos, ordinal.OMEGA)
        v = arity + len(bound)
        bound.append(v)
        body = go(budget - 1, d - 1)
        bound.pop()
        return Exists(v, body) if kind == "exists" else Forall(v, body)

    return go(max_qr, depth)

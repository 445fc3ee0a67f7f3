"""Formula ASTs for the pointed-ordered-group language {+, <=, u} and the
pointed-semigroup language {+, u}, with ordinal-valued quantifier rank.

Countable conjunctions and disjunctions are represented by explicit finite
families plus a schema node carrying finitely many prototype members and a
supplied supremum rank; the supplied rank is trusted (and validated to
dominate the prototypes), not derived.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ordarena import ordinal
from ordarena.ordinal import Ord

LANG_K0 = "k0"   # {+, <=, u}
LANG_V = "v"     # {+, u}


@dataclass(frozen=True)
class Term:
    """Formal sum  sum_v mult_v * x_v + units * u."""

    vars: tuple[tuple[int, int], ...]   # (var id, multiplicity >= 1), sorted
    units: int = 0

    def __post_init__(self):
        if any(m < 1 for _, m in self.vars):
            raise ValueError("variable multiplicities must be >= 1")
        if self.units < 0:
            raise ValueError("unit count must be >= 0")
        if not self.vars and self.units == 0:
            raise ValueError("terms must have at least one summand")
        ids = [v for v, _ in self.vars]
        if ids != sorted(set(ids)):
            raise ValueError("variable list must be sorted and duplicate-free")


def term(*var_ids: int, units: int = 0) -> Term:
    counts: dict[int, int] = {}
    for v in var_ids:
        counts[v] = counts.get(v, 0) + 1
    return Term(tuple(sorted(counts.items())), units)


def merge_terms(a: Term, b: Term) -> Term:
    counts = dict(a.vars)
    for v, m in b.vars:
        counts[v] = counts.get(v, 0) + m
    return Term(tuple(sorted(counts.items())), a.units + b.units)


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Le:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    children: tuple["Formula", ...]

    def __post_init__(self):
        if not self.children:
            raise ValueError("finite families need at least one member")


@dataclass(frozen=True)
class Or:
    children: tuple["Formula", ...]

    def __post_init__(self):
        if not self.children:
            raise ValueError("finite families need at least one member")


@dataclass(frozen=True)
class Exists:
    var: int
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: int
    body: "Formula"


@dataclass(frozen=True)
class _CountableFamily:
    prototypes: tuple["Formula", ...]
    rank: Ord

    def __post_init__(self):
        if not self.prototypes:
            raise ValueError("a schema node needs at least one prototype")
        worst = ordinal.ZERO
        for p in self.prototypes:
            r = qr(p)
            if worst < r:
                worst = r
        if self.rank < worst:
            raise ValueError("supplied rank is below a prototype's rank")


class CountableAnd(_CountableFamily):
    pass


class CountableOr(_CountableFamily):
    pass


Formula = Union[Eq, Le, Not, And, Or, Exists, Forall, CountableAnd, CountableOr]


def qr(phi: Formula) -> Ord:
    """Quantifier rank: 0 on atomic, preserved by negation, max over finite
    families, the supplied supremum on schema nodes, +1 per quantifier."""
    if isinstance(phi, (Eq, Le)):
        return ordinal.ZERO
    if isinstance(phi, Not):
        return qr(phi.body)
    if isinstance(phi, (And, Or)):
        best = ordinal.ZERO
        for child in phi.children:
            r = qr(child)
            if best < r:
                best = r
        return best
    if isinstance(phi, (CountableAnd, CountableOr)):
        return phi.rank
    if isinstance(phi, (Exists, Forall)):
        return ordinal.add(qr(phi.body), ordinal.ONE)
    raise TypeError(f"not a formula: {phi!r}")


def free_vars(phi: Formula) -> frozenset[int]:
    if isinstance(phi, (Eq, Le)):
        return frozenset(v for v, _ in phi.left.vars) | frozenset(v for v, _ in phi.right.vars)
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, (And, Or)):
        out: frozenset[int] = frozenset()
        for child in phi.children:
            out |= free_vars(child)
        return out
    if isinstance(phi, (CountableAnd, CountableOr)):
        out = frozenset()
        for child in phi.prototypes:
            out |= free_vars(child)
        return out
    if isinstance(phi, (Exists, Forall)):
        return free_vars(phi.body) - {phi.var}
    raise TypeError(f"not a formula: {phi!r}")


def well_sorted(phi: Formula, lang: str) -> bool:
    """Le is only available in the ordered language."""
    if isinstance(phi, Le):
        return lang == LANG_K0
    if isinstance(phi, Eq):
        return True
    if isinstance(phi, Not):
        return well_sorted(phi.body, lang)
    if isinstance(phi, (And, Or)):
        return all(well_sorted(c, lang) for c in phi.children)
    if isinstance(phi, (CountableAnd, CountableOr)):
        return all(well_sorted(c, lang) for c in phi.prototypes)
    if isinstance(phi, (Exists, Forall)):
        return well_sorted(phi.body, lang)
    raise TypeError(f"not a formula: {phi!r}")


# -- s-expression serialization -------------------------------------------------


def _term_sexpr(t: Term) -> str:
    parts = []
    for v, m in t.vars:
        parts.extend([f"x{v}"] * m)
    parts.extend(["u"] * t.units)
    return "(+ " + " ".join(parts) + ")"


def to_sexpr(phi: Formula) -> str:
    if isinstance(phi, Eq):
        return f"(eq {_term_sexpr(phi.left)} {_term_sexpr(phi.right)})"
    if isinstance(phi, Le):
        return f"(le {_term_sexpr(phi.left)} {_term_sexpr(phi.right)})"
    if isinstance(phi, Not):
        return f"(not {to_sexpr(phi.body)})"
    if isinstance(phi, And):
        return "(and " + " ".join(to_sexpr(c) for c in phi.children) + ")"
    if isinstance(phi, Or):
        return "(or " + " ".join(to_sexpr(c) for c in phi.children) + ")"
    if isinstance(phi, CountableAnd):
        return f"(cand \"{ordinal.format_ord(phi.rank)}\" " + \
            " ".join(to_sexpr(c) for c in phi.prototypes) + ")"
    if isinstance(phi, CountableOr):
        return f"(cor \"{ordinal.format_ord(phi.rank)}\" " + \
            " ".join(to_sexpr(c) for c in phi.prototypes) + ")"
    if isinstance(phi, Exists):
        return f"(exists x{phi.var} {to_sexpr(phi.body)})"
    if isinstance(phi, Forall):
        return f"(forall x{phi.var} {to_sexpr(phi.body)})"
    raise TypeError(f"not a formula: {phi!r}")


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def from_sexpr(text: str) -> Formula:
    tokens = _tokenize(text)
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of input")
        tok = tokens[pos]
        pos += 1
        if tok != "(":
            return tok
        out = []
        while pos < len(tokens) and tokens[pos] != ")":
            out.append(read())
        if pos >= len(tokens):
            raise ValueError("missing )")
        pos += 1
        return out

    tree = read()
    if pos != len(tokens):
        raise ValueError("trailing input")
    return _build(tree)


def _build_term(tree) -> Term:
    if not isinstance(tree, list) or not tree or tree[0] != "+":
        raise ValueError(f"expected a (+ ...) term, got {tree!r}")
    var_ids = []
    units = 0
    for atom in tree[1:]:
        if atom == "u":
            units += 1
        elif isinstance(atom, str) and atom.startswith("x"):
            var_ids.append(int(atom[1:]))
        else:
            raise ValueError(f"bad term atom {atom!r}")
    return term(*var_ids, units=units)


def _build(tree) -> Formula:
    if not isinstance(tree, list) or not tree:
        raise ValueError(f"expected a formula, got {tree!r}")
    head = tree[0]
    if head == "eq":
        return Eq(_build_term(tree[1]), _build_term(tree[2]))
    if head == "le":
        return Le(_build_term(tree[1]), _build_term(tree[2]))
    if head == "not":
        return Not(_build(tree[1]))
    if head == "and":
        return And(tuple(_build(t) for t in tree[1:]))
    if head == "or":
        return Or(tuple(_build(t) for t in tree[1:]))
    if head in ("cand", "cor"):
        rank = ordinal.parse(tree[1].strip('"'))
        protos = tuple(_build(t) for t in tree[2:])
        return (CountableAnd if head == "cand" else CountableOr)(protos, rank)
    if head in ("exists", "forall"):
        var = int(tree[1][1:])
        body = _build(tree[2])
        return (Exists if head == "exists" else Forall)(var, body)
    raise ValueError(f"unknown form {head!r}")

"""Exact arithmetic on countable ordinal notations.

An ordinal is stored in Cantor normal form: a strictly decreasing sum of
terms ``w^e * c`` with integer coefficients ``c >= 1``.  Exponents are
ordinal notations themselves, except that the fixed points ``e_k`` of
``w^x = x`` are kept as opaque atomic exponents (``Eps``), so the term
``w^(e_k) * 1`` *is* the canonical representation of ``e_k``.  Everything
below ``e_{MAX_EPSILON+1}`` that can be produced by ``+``, ``*`` and
``w^(-)`` from naturals and the epsilon atoms is representable.

Values are immutable and hashable; all operations are pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering
from typing import Union

MAX_EPSILON = 8  # highest supported epsilon constant index


class Comparison(Enum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class Eps:
    """Atomic exponent denoting the epsilon number e_k."""

    index: int

    def __post_init__(self):
        if not (0 <= self.index <= MAX_EPSILON):
            raise OrdinalError(f"epsilon index {self.index} outside supported range 0..{MAX_EPSILON}")


Exponent = Union["Ord", Eps]


@total_ordering
@dataclass(frozen=True)
class Ord:
    """Ordinal notation: tuple of (exponent, coefficient) terms in CNF."""

    terms: tuple[tuple[Exponent, int], ...] = ()

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __lt__(self, other: "Ord") -> bool:
        return _cmp(self, other) < 0

    def __str__(self) -> str:
        return format_ord(self)

    def __repr__(self) -> str:
        return f"Ord({format_ord(self)!r})"

    # -- structural queries -------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _exp_is_zero(self.terms[0][0]))

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and _exp_is_zero(self.terms[-1][0])

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.is_successor

    def to_int(self) -> int:
        if not self.is_finite:
            raise OrdinalError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    def leading_exponent(self) -> "Ord":
        if not self.terms:
            raise OrdinalError("0 has no leading term")
        return _exp_ord(self.terms[0][0])


class OrdinalError(ValueError):
    pass


class OrdinalSyntaxError(OrdinalError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# -- canonical constructors --------------------------------------------------

ZERO = Ord()
ONE = Ord(((ZERO, 1),))
OMEGA = Ord(((ONE, 1),))


def fin(n: int) -> Ord:
    if n < 0:
        raise OrdinalError("ordinals are non-negative")
    return Ord(((ZERO, n),)) if n else ZERO


def eps(k: int) -> Ord:
    return Ord(((Eps(k), 1),))


def _exp_ord(e: Exponent) -> Ord:
    return e if isinstance(e, Ord) else Ord(((e, 1),))


def _exp_is_zero(e: Exponent) -> bool:
    return isinstance(e, Ord) and not e.terms


def _norm_exp(e: Ord) -> Exponent:
    # w^(e_k) collapses to the atom e_k (fixed point identity)
    if len(e.terms) == 1 and e.terms[0][1] == 1 and isinstance(e.terms[0][0], Eps):
        return e.terms[0][0]
    return e


def _mk(terms: list[tuple[Exponent, int]]) -> Ord:
    for (e, c) in terms:
        if c < 1:
            raise OrdinalError("coefficients must be >= 1")
    for i in range(len(terms) - 1):
        if _cmp_exp(terms[i][0], terms[i + 1][0]) <= 0:
            raise OrdinalError("exponents must be strictly decreasing")
    return Ord(tuple(terms))


# -- comparison ---------------------------------------------------------------


def _cmp_exp(e1: Exponent, e2: Exponent) -> int:
    if isinstance(e1, Eps) and isinstance(e2, Eps):
        return (e1.index > e2.index) - (e1.index < e2.index)
    return _cmp(_exp_ord(e1), _exp_ord(e2))


def _cmp(a: Ord, b: Ord) -> int:
    if a.terms == b.terms:
        return 0
    for (e1, c1), (e2, c2) in zip(a.terms, b.terms):
        c = _cmp_exp(e1, e2)
        if c:
            return c
        if c1 != c2:
            return 1 if c1 > c2 else -1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


def compare(a: Ord, b: Ord) -> Comparison:
    """Total order on notations, consistent with the ordinal order."""
    return Comparison(_cmp(a, b))


# -- arithmetic ---------------------------------------------------------------


def add(a: Ord, b: Ord) -> Ord:
    """Ordinal sum a + b (left argument absorbed below b's leading term)."""
    if not b.terms:
        return a
    if not a.terms:
        return b
    eb = b.terms[0][0]
    kept = [t for t in a.terms if _cmp_exp(t[0], eb) > 0]
    merged = list(a.terms[len(kept):len(kept) + 1])
    if merged and _cmp_exp(merged[0][0], eb) == 0:
        head = (eb, merged[0][1] + b.terms[0][1])
        return Ord(tuple(kept) + (head,) + b.terms[1:])
    return Ord(tuple(kept) + b.terms)


def mul(a: Ord, b: Ord) -> Ord:
    """Ordinal product a * b (non-commutative)."""
    if not a.terms or not b.terms:
        return ZERO
    e1, c1 = a.terms[0]
    out = ZERO
    for (f, d) in b.terms:
        if _exp_is_zero(f):
            # a * d for finite d: scale the leading coefficient, keep tail
            part = Ord(((e1, c1 * d),) + a.terms[1:])
        else:
            part = Ord(((_norm_exp(add(_exp_ord(e1), _exp_ord(f))), d),))
        out = add(out, part)
    return out


def omega_pow(a: Ord) -> Ord:
    """w^a in normalized form (collapses on epsilon fixed points)."""
    if not a.terms:
        return ONE
    return Ord(((_norm_exp(a), 1),))


def succ(a: Ord) -> Ord:
    return add(a, ONE)


def pred(a: Ord) -> Ord:
    if not a.is_successor:
        raise OrdinalError(f"{a} is not a successor")
    e, c = a.terms[-1]
    if c > 1:
        return Ord(a.terms[:-1] + ((e, c - 1),))
    return Ord(a.terms[:-1])


def left_subtract(a: Ord, b: Ord) -> Ord:
    """The unique d with a + d = b.  Requires a <= b."""
    if _cmp(a, b) > 0:
        raise OrdinalError(f"left_subtract: {a} > {b}")
    if a.terms == b.terms:
        return ZERO
    for i, ((e1, c1), (e2, c2)) in enumerate(zip(a.terms, b.terms)):
        # a <= b was checked above, so the first difference favours b
        if _cmp_exp(e1, e2) < 0:
            return Ord(b.terms[i:])
        if c1 != c2:
            return Ord(((e2, c2 - c1),) + b.terms[i + 1:])
    return Ord(b.terms[len(a.terms):])


def is_mult_indecomposable(a: Ord) -> bool:
    """True iff g*a = a for every 0 < g < a.

    Equivalently a is 1, 2 or of the form w^(w^r): 2 qualifies because the
    only ordinal strictly between 0 and 2 is 1.
    """
    if not a.terms:
        raise OrdinalError("0 is not in the domain")
    if a == ONE or a == fin(2):
        return True
    if len(a.terms) != 1 or a.terms[0][1] != 1:
        return False
    e = _exp_ord(a.terms[0][0])
    # additively indecomposable exponent: a single term with coefficient 1
    return len(e.terms) == 1 and e.terms[0][1] == 1


def ms_invariant(a: Ord) -> tuple[Ord, int]:
    """Topological invariant (g, m) of a successor ordinal: a is homeomorphic
    to w^g * m + 1.  Computed as the leading CNF term of a - 1."""
    if not a.terms:
        raise OrdinalError("0 is not a successor")
    if not a.is_successor:
        raise OrdinalError(f"{a} is a limit ordinal")
    d = pred(a)
    if not d.terms:
        return (ZERO, 0)
    e, c = d.terms[0]
    return (_exp_ord(e), c)


# -- text grammar -------------------------------------------------------------
#
#   expr := term ('+' term)*
#   term := 'w' ['^' '(' expr ')'] ['*' nat] | 'e' nat | nat

_TOKEN = re.compile(r"\s*(\d+|[we^()*+])")


def parse(text: str) -> Ord:
    """Parse a notation string; result is normalized (format round-trips)."""
    tokens: list[tuple[str, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise OrdinalSyntaxError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    if not tokens:
        raise OrdinalSyntaxError("empty input", 0)

    idx = 0

    def peek() -> str | None:
        return tokens[idx][0] if idx < len(tokens) else None

    def take(expected: str | None = None) -> str:
        nonlocal idx
        if idx >= len(tokens):
            raise OrdinalSyntaxError(f"unexpected end of input (expected {expected})", len(text))
        tok, at = tokens[idx]
        if expected is not None and tok != expected:
            raise OrdinalSyntaxError(f"expected {expected!r}, found {tok!r}", at)
        idx += 1
        return tok

    def parse_nat() -> int:
        if idx >= len(tokens):
            raise OrdinalSyntaxError("unexpected end of input (expected number)", len(text))
        tok, at = tokens[idx]
        if not tok.isdigit():
            raise OrdinalSyntaxError(f"expected number, found {tok!r}", at)
        take()
        return int(tok)

    def parse_term() -> Ord:
        tok = peek()
        at = tokens[idx][1] if idx < len(tokens) else len(text)
        if tok == "w":
            take()
            exponent = ONE
            if peek() == "^":
                take()
                take("(")
                exponent = parse_expr()
                take(")")
            coeff = 1
            if peek() == "*":
                take()
                coeff = parse_nat()
            if coeff == 0:
                raise OrdinalSyntaxError("coefficient 0 is not normalizable", at)
            return mul(omega_pow(exponent), fin(coeff))
        if tok == "e":
            take()
            k = parse_nat()
            return eps(k)
        if tok is not None and tok[0].isdigit():
            return fin(parse_nat())
        raise OrdinalSyntaxError(f"expected term, found {tok!r}", at)

    def parse_expr() -> Ord:
        value = parse_term()
        while peek() == "+":
            take()
            value = add(value, parse_term())
        return value

    result = parse_expr()
    if idx != len(tokens):
        raise OrdinalSyntaxError(f"trailing input {tokens[idx][0]!r}", tokens[idx][1])
    return result


def format_ord(a: Ord) -> str:
    """Canonical text form; parse(format_ord(a)) == a."""
    if not a.terms:
        return "0"
    parts = []
    for (e, c) in a.terms:
        if isinstance(e, Eps):
            parts.append(f"e{e.index}" if c == 1 else f"w^(e{e.index})*{c}")
            continue
        if not e.terms:
            parts.append(str(c))
        elif e == ONE:
            parts.append("w" if c == 1 else f"w*{c}")
        else:
            body = f"w^({format_ord(e)})"
            parts.append(body if c == 1 else f"{body}*{c}")
    return "+".join(parts)


# -- JSON encoding (nested term arrays) ---------------------------------------


def to_json(a: Ord):
    return [[f"e{e.index}" if isinstance(e, Eps) else to_json(e), c] for (e, c) in a.terms]


def from_json(data) -> Ord:
    if not isinstance(data, list):
        raise OrdinalError("ordinal JSON must be a list of [exponent, coeff] pairs")
    terms: list[tuple[Exponent, int]] = []
    for item in data:
        if not (isinstance(item, list) and len(item) == 2):
            raise OrdinalError("each term must be a [exponent, coeff] pair")
        raw_e, c = item
        if isinstance(raw_e, str):
            if not re.fullmatch(r"e\d+", raw_e):
                raise OrdinalError(f"bad exponent atom {raw_e!r}")
            e: Exponent = Eps(int(raw_e[1:]))
        else:
            e = _norm_exp(from_json(raw_e))
        if not isinstance(c, int):
            raise OrdinalError("coefficients must be integers")
        terms.append((e, c))
    return _mk(terms)


# -- sampling -----------------------------------------------------------------


def random_below(rng, bound: Ord, depth: int = 2) -> Ord:
    """Seeded sample of an ordinal strictly below ``bound``.

    Biased toward structurally simple values (boundary prefixes of the
    bound's CNF plus a small random tail); adequate as a move generator
    for games, not a uniform distribution.
    """
    if not bound.terms:
        raise OrdinalError("no ordinal below 0")
    if bound.is_finite:
        return fin(rng.randrange(bound.to_int()))
    for _ in range(64):
        i = rng.randrange(len(bound.terms))
        e, c = bound.terms[i]
        prefix = list(bound.terms[:i])
        new_c = rng.randint(0, c - 1)
        if new_c:
            prefix.append((e, new_c))
        tail = ZERO
        if depth > 0 and rng.random() < 0.7:
            tail_bound = _exp_ord(e)
            if tail_bound.terms:
                # tail strictly below w^e: one smaller-exponent term or a finite part
                te = random_below(rng, tail_bound, depth - 1)
                tail = mul(omega_pow(te), fin(rng.randint(1, 3)))
        candidate = Ord(tuple(prefix))
        candidate = add(candidate, tail)
        if _cmp(candidate, bound) < 0:
            return candidate
    return ZERO

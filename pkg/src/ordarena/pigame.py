"""Metric back-and-forth game over finite-dimensional commutative toy
algebras carried on Gaussian-rational coordinates.

Player I names a tolerance along with each probe; Player II answers with a
pair, one component within the tolerance of the probe on the probed side.
Distances are compared through exact squared sup-norms, so the ball
constraint and the final win relation are exactly decidable.  The win
relation asks whether a_i -> b_i extends to a unital *-isomorphism of the
generated subalgebras; for vectors in C^n these subalgebras are the
functions constant on the cells of the coordinate partition generated by
the tuple, so the check reduces to matching cell value patterns.

Whether the induced relation between structures is transitive is an open
question; this module records it and does not rely on transitivity
anywhere.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ordarena import ordinal
from ordarena.efgame.game import GameError, Side
from ordarena.ordinal import Ord


@dataclass(frozen=True)
class GaussianRational:
    """p + q*i with exact rational p, q."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, other):
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __str__(self):
        if not self.im:
            return str(self.re)
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"


def gq(re, im=0) -> GaussianRational:
    return GaussianRational(Fraction(re), Fraction(im))


def vector(*coords) -> tuple[GaussianRational, ...]:
    out = []
    for c in coords:
        if isinstance(c, GaussianRational):
            out.append(c)
        elif isinstance(c, complex):
            out.append(GaussianRational(Fraction(c.real), Fraction(c.imag)))
        else:
            out.append(gq(c))
    return tuple(out)


@dataclass(frozen=True)
class ToyAlgebra:
    """C^n with componentwise operations, unit (1,...,1), sup-norm metric."""

    n: int
    kind = "toy-algebra"

    def __contains__(self, x) -> bool:
        return isinstance(x, tuple) and len(x) == self.n and \
            all(isinstance(c, GaussianRational) for c in x)

    @property
    def unit(self):
        return vector(*([1] * self.n))

    def d2(self, x, y) -> Fraction:
        """Squared sup-norm distance."""
        return max(((a - b).abs2() for a, b in zip(x, y)), default=Fraction(0))

    def sample(self, rng, value_pool=None):
        pool = value_pool or [gq(0), gq(1), gq(2), gq(Fraction(1, 2)), gq(0, 1), gq(1, 1)]
        return tuple(rng.choice(pool) for _ in range(self.n))

    def element_to_json(self, x):
        return [[str(c.re), str(c.im)] for c in x]

    def element_from_json(self, data):
        if not isinstance(data, list) or len(data) != self.n:
            raise ValueError(f"expected a list of {self.n} [re, im] pairs")
        return tuple(GaussianRational(Fraction(re), Fraction(im)) for re, im in data)

    def describe(self) -> str:
        return f"algebra:{self.n}"


def generated_partition(vectors, n: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates i, j share a cell iff every generator takes the same value
    on both; the generated unital *-subalgebra is the functions constant on
    these cells."""
    signature = {}
    for i in range(n):
        signature.setdefault(tuple(v[i] for v in vectors), []).append(i)
    cells = sorted(signature.values(), key=lambda c: c[0])
    return tuple(tuple(c) for c in cells)


def _cell_patterns(vectors, n: int) -> set[tuple]:
    cells = generated_partition(vectors, n)
    return {tuple(v[cell[0]] for v in vectors) for cell in cells}


def check_win_pi(pairs, a: ToyAlgebra, b: ToyAlgebra) -> bool:
    """II wins iff the cells of the two generated partitions admit a
    bijection matching every generator's value pattern (cell sizes are not
    part of the *-algebra structure, so they are ignored)."""
    pairs = list(pairs)
    avecs = [p[0] for p in pairs]
    bvecs = [p[1] for p in pairs]
    return _cell_patterns(avecs, a.n) == _cell_patterns(bvecs, b.n)


def win_witness(pairs, a: ToyAlgebra, b: ToyAlgebra) -> Optional[dict]:
    """The cell bijection behind a II win, for transcripts."""
    pairs = list(pairs)
    avecs = [p[0] for p in pairs]
    bvecs = [p[1] for p in pairs]
    cells_a = generated_partition(avecs, a.n)
    cells_b = generated_partition(bvecs, b.n)
    by_pattern = {tuple(v[c[0]] for v in bvecs): c for c in cells_b}
    mapping = []
    for cell in cells_a:
        pattern = tuple(v[cell[0]] for v in avecs)
        if pattern not in by_pattern:
            return None
    for cell in cells_a:
        pattern = tuple(v[cell[0]] for v in avecs)
        mapping.append({"cell_a": list(cell), "cell_b": list(by_pattern[pattern]),
                        "pattern": [str(x) for x in pattern]})
    if len(cells_a) != len(cells_b):
        return None
    return {"cells": mapping}


# -- game state ----------------------------------------------------------------


@dataclass(frozen=True)
class PIRound:
    clock: Ord
    side: Side
    probe: tuple
    eps: Fraction
    answer_a: tuple
    answer_b: tuple

    def pair(self):
        return (self.answer_a, self.answer_b)


@dataclass(frozen=True)
class PIPosition:
    initial_clock: Ord
    rounds: tuple[PIRound, ...] = ()

    @property
    def clock(self) -> Ord:
        return self.rounds[-1].clock if self.rounds else self.initial_clock

    @property
    def is_over(self) -> bool:
        return self.clock == ordinal.ZERO

    def pairs(self):
        return tuple(r.pair() for r in self.rounds)


@dataclass(frozen=True)
class PIMove:
    clock: Ord
    side: Side
    element: tuple
    eps: Fraction


@dataclass(frozen=True)
class PendingPIRound:
    position: PIPosition
    move: PIMove

    def complete(self, answer_a, answer_b, a: ToyAlgebra, b: ToyAlgebra) -> PIPosition:
        if answer_a not in a or answer_b not in b:
            raise GameError("ELEMENT_NOT_IN_STRUCTURE", "answer pair outside the structures")
        probed = a if self.move.side is Side.A else b
        close = answer_a if self.move.side is Side.A else answer_b
        if not probed.d2(close, self.move.element) < self.move.eps ** 2:
            raise GameError("BALL_VIOLATION",
                            "the answer on the probed side must be strictly within eps of the probe")
        r = PIRound(self.move.clock, self.move.side, self.move.element, self.move.eps,
                    answer_a, answer_b)
        return PIPosition(self.position.initial_clock, self.position.rounds + (r,))


def pi_step(position: PIPosition, move: PIMove, a: ToyAlgebra, b: ToyAlgebra) -> PendingPIRound:
    if position.is_over:
        raise GameError("GAME_OVER", "the clock already reached 0")
    if not move.clock < position.clock:
        raise GameError("CLOCK_NOT_DECREASING",
                        f"new clock {move.clock} must be strictly below {position.clock}")
    if move.eps <= 0:
        raise GameError("EPS_NON_POSITIVE", "the tolerance must be strictly positive")
    structure = a if move.side is Side.A else b
    if move.element not in structure:
        raise GameError("ELEMENT_NOT_IN_STRUCTURE", f"probe does not belong to side {move.side.value}")
    return PendingPIRound(position, move)


class PIVerdict(enum.Enum):
    II_WINS = "II_WINS"
    I_WINS = "I_WINS"


def check_win(position: PIPosition, a: ToyAlgebra, b: ToyAlgebra) -> PIVerdict:
    if not position.is_over:
        raise GameError("GAME_NOT_OVER", "the clock has not reached 0")
    return PIVerdict.II_WINS if check_win_pi(position.pairs(), a, b) else PIVerdict.I_WINS


# -- players -------------------------------------------------------------------


class EchoMirrorII:
    """Echo the probe inside its tolerance ball on the probed side and mirror
    its cell pattern on the other side."""

    provenance = "Identity"

    def answer(self, position: PIPosition, move: PIMove, a: ToyAlgebra, b: ToyAlgebra):
        if a == b:
            return (move.element, move.element)
        probed, other = (a, b) if move.side is Side.A else (b, a)
        pairs = position.pairs()
        probed_vecs = [p[0] if move.side is Side.A else p[1] for p in pairs]
        other_vecs = [p[1] if move.side is Side.A else p[0] for p in pairs]
        cells_p = generated_partition(probed_vecs, probed.n)
        cells_o = generated_partition(other_vecs, other.n)
        by_pattern = {tuple(v[c[0]] for v in probed_vecs): c for c in cells_p}
        mirrored = [gq(0)] * other.n
        for cell in cells_o:
            pattern = tuple(v[cell[0]] for v in other_vecs)
            src = by_pattern.get(pattern)
            value = move.element[src[0]] if src is not None else gq(0)
            for i in cell:
                mirrored[i] = value
        mirror = tuple(mirrored)
        return (move.element, mirror) if move.side is Side.A else (mirror, move.element)


class RandomPI:
    """Seeded random Player I for the metric game."""

    provenance = "Human"

    def __init__(self, seed: int):
        import random as _random
        self.rng = _random.Random(seed)

    def move(self, position: PIPosition, a: ToyAlgebra, b: ToyAlgebra) -> PIMove:
        clock = position.clock
        if clock.is_finite:
            new_clock = ordinal.fin(self.rng.randrange(clock.to_int()))
        else:
            new_clock = ordinal.fin(self.rng.randint(0, 4))
        side = self.rng.choice((Side.A, Side.B))
        structure = a if side is Side.A else b
        eps = Fraction(self.rng.randint(1, 4), self.rng.randint(1, 4))
        return PIMove(new_clock, side, structure.sample(self.rng), eps)


def play_pi_match(a: ToyAlgebra, b: ToyAlgebra, clock: Ord, strat_i, strat_ii,
                  max_rounds: int = 200):
    position = PIPosition(clock)
    while not position.is_over and len(position.rounds) < max_rounds:
        move = strat_i.move(position, a, b)
        pending = pi_step(position, move, a, b)
        ans_a, ans_b = strat_ii.answer(position, move, a, b)
        position = pending.complete(ans_a, ans_b, a, b)
    return position, check_win(position, a, b)


def transcript_json(position: PIPosition, verdict: PIVerdict, a: ToyAlgebra, b: ToyAlgebra) -> dict:
    rounds = []
    for r in position.rounds:
        probed = a if r.side is Side.A else b
        rounds.append({
            "clock": ordinal.format_ord(r.clock),
            "side": r.side.value,
            "move": probed.element_to_json(r.probe),
            "eps": str(r.eps),
            "answer": {"a": a.element_to_json(r.answer_a), "b": b.element_to_json(r.answer_b)},
        })
    return {
        "initial_clock": ordinal.format_ord(position.initial_clock),
        "rounds": rounds,
        "verdict": verdict.value,
    }

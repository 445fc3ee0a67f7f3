"""Off-the-shelf players: echo, seeded random/greedy opponents, and the
heuristic order strategy that matches CNF blocks across two ordinal orders
(empirically validated only; it carries the KarpFamily provenance tag)."""

from __future__ import annotations

import random
from typing import Optional

from ordarena import findings, ordinal
from ordarena.efgame.game import GameError, GamePosition, Move, PlayerI, PlayerII, Side
from ordarena.efgame.solver import _Gap, _gaps, _mirror_candidates, _oriented_pairs, probe_points
from ordarena.efgame.structures import OrdinalOrder, Structure
from ordarena.ordinal import Ord, left_subtract, succ


class IdentityII(PlayerII):
    """Echo the probe on the other side; only sound when both sides carry
    the same structure."""

    provenance = "Identity"

    def answer(self, position, move, a, b):
        other = b if move.side is Side.A else a
        if move.element in other:
            return move.element
        raise GameError("ELEMENT_NOT_IN_STRUCTURE", "identity answer falls outside the structure")


class RandomI(PlayerI):
    """Seeded random Player I: random clock drop, side, and element."""

    provenance = "Human"

    def __init__(self, seed: int, clock_bias_small: bool = True):
        self.rng = random.Random(seed)
        self.clock_bias_small = clock_bias_small

    def _drop_clock(self, clock: Ord) -> Ord:
        if clock.is_finite:
            return ordinal.fin(self.rng.randrange(clock.to_int()))
        if self.clock_bias_small and self.rng.random() < 0.8:
            # keep matches short: jump into a small finite clock
            return ordinal.fin(self.rng.randint(0, 4))
        return ordinal.random_below(self.rng, clock)

    def move(self, position, a, b) -> Move:
        side = self.rng.choice((Side.A, Side.B))
        structure = a if side is Side.A else b
        try:
            element = structure.sample(self.rng)
        except ValueError:
            side = side.other()
            structure = a if side is Side.A else b
            element = structure.sample(self.rng)
        return Move(self._drop_clock(position.clock), side, element)


class GreedyI(PlayerI):
    """Plays canonical probe points of ordinal orders in a seeded random
    order; a stronger opponent than uniform sampling."""

    provenance = "Human"

    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def move(self, position, a, b) -> Move:
        clock = position.clock
        new_clock = ordinal.fin(clock.to_int() - 1) if clock.is_finite \
            else ordinal.fin(self.rng.randint(1, 4))
        side = self.rng.choice((Side.A, Side.B))
        structure = a if side is Side.A else b
        window = new_clock.to_int() + 1
        cands = probe_points(structure.length, window) if isinstance(structure, OrdinalOrder) else None
        if not cands:
            element = structure.sample(self.rng)
        else:
            marked = {p for p, _ in _oriented_pairs(position, side)}
            fresh = [c for c in cands if c not in marked]
            element = self.rng.choice(fresh or cands)
        return Move(new_clock, side, element)


class RandomII(PlayerII):
    provenance = "Human"

    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def answer(self, position, move, a, b):
        other = b if move.side is Side.A else a
        return other.sample(self.rng)


class CNFBlockII(PlayerII):
    """Best-effort order strategy: answers a probe with the point in the
    mate gap at the same CNF-block offset, falling back to boundary
    translation.  No certification; anomalies are recorded, not patched."""

    provenance = "KarpFamily"

    def answer(self, position: GamePosition, move: Move, a: Structure, b: Structure):
        probe_struct = a if move.side is Side.A else b
        other = b if move.side is Side.A else a
        assert isinstance(probe_struct, OrdinalOrder) and isinstance(other, OrdinalOrder)
        x = move.element
        oriented = _oriented_pairs(position, move.side)
        for (p, mate) in oriented:
            if p == x:
                return mate
        gap = next(g for g in _gaps(oriented)
                   if (g.lo is None or g.lo < x) and (g.hi is None or x < g.hi))
        mate_gap = _Gap(gap.lo_mate, gap.hi_mate, gap.lo, gap.hi)
        ga = gap.type_in(probe_struct.length)
        gb = mate_gap.type_in(other.length)
        if not gb.terms:
            findings.record("karp.heuristic", "probe fell into a gap with an empty mate",
                            probe=str(x), gap_a=str(ga))
            raise GameError("NO_ANSWER", "mate gap is empty")
        off = gap.offset_of(x)
        cand = self._match_offset(off, ga, gb)
        return mate_gap.absolute(cand)

    @staticmethod
    def _match_offset(off: Ord, ga: Ord, gb: Ord) -> Ord:
        # points strictly above the probe within its gap
        rest = left_subtract(succ(off), ga)
        if rest.is_finite:
            # near the top: anchor the same distance below the mate gap's top
            r = rest.to_int()
            prefer_right = not off.is_finite or off.to_int() >= r
            anchored = _minus_finite(gb, r + 1)
            if prefer_right and anchored is not None:
                return anchored
        if off < gb:
            return off
        # translate CNF boundary prefix: largest usable partial sum of gb
        candidates = [s for s in _mirror_candidates(off, ga, gb, 2) if s < gb]
        if candidates:
            return candidates[-1]
        findings.record("karp.heuristic", "no block-matched answer", off=str(off),
                        gap_a=str(ga), gap_b=str(gb))
        return ordinal.ZERO


def _minus_finite(x: Ord, j: int, cap: int = 64) -> Optional[Ord]:
    """x - j from the right, when x ends in a long enough successor chain."""
    if j > cap:
        return None
    for _ in range(j):
        if not x.is_successor:
            return None
        x = ordinal.pred(x)
    return x


def exhaustive_ii_check(a: Structure, b: Structure, clock: int, strategy: PlayerII,
                        position: Optional[GamePosition] = None) -> bool:
    """Replays *every* Player I line against a Player II strategy on finite
    structures; True iff II wins every leaf."""
    from ordarena.efgame.game import check_win, efd_step, Verdict

    pos = position or GamePosition(ordinal.fin(clock))
    if pos.is_over:
        return check_win(pos, a, b) is Verdict.II_WINS
    c = pos.clock.to_int()
    for m in range(c):
        for side, structure in ((Side.A, a), (Side.B, b)):
            elements = structure.elements()
            if elements is None:
                raise ValueError("exhaustive check needs finite structures")
            for x in elements:
                mv = Move(ordinal.fin(m), side, x)
                pending = efd_step(pos, mv, a, b)
                try:
                    y = strategy.answer(pos, mv, a, b)
                    nxt = pending.complete(y, a, b)
                except GameError:
                    return False
                if not exhaustive_ii_check(a, b, clock, strategy, nxt):
                    return False
    return True

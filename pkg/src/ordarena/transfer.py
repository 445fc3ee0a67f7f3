"""Wraps a Player II strategy for the order game on (beta+1, gamma+1) at
clock w*alpha into a Player II strategy for the group game on the
step-function groups at clock alpha.

On a group move (alpha_k, g): the minimal interval partition carrying g
(m_k + 1 breakpoints) is fed into an auxiliary order match as Player I
moves at clocks w*alpha_k + m_k down to w*alpha_k, which keeps the
auxiliary clock sequence strictly decreasing across the whole match since
alpha_k < alpha_{k-1} forces w*alpha_k + m < w*alpha_{k-1}.  The order
answers accumulate into two breakpoint families whose induced
value-transporting isomorphism between the step subgroups produces the
group answer.  If the order answers ever fail to form a partition
isomorphism (endpoints fixed, strictly increasing, consistent on repeats),
the match is forfeited for Player II with a diagnostic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from ordarena import findings, ordinal
from ordarena.dimgroup.stepfn import IntervalPartition, StepFunction, partition_iso
from ordarena.efgame.game import (
    GameError,
    GamePosition,
    MatchResult,
    Move,
    PlayerII,
    Round,
    Side,
    play_match,
    transcript_json,
)
from ordarena.efgame.strategies import CNFBlockII, IdentityII, RandomI
from ordarena.efgame.structures import DimGroupStructure, OrdinalOrder
from ordarena.ordinal import Ord


@dataclass
class TransferState:
    """Bookkeeping of one transferred match."""

    aux_position: GamePosition
    aux_order_a: OrdinalOrder
    aux_order_b: OrdinalOrder
    bp_pairs: list[tuple[Ord, Ord]] = field(default_factory=list)
    aux_clocks: list[Ord] = field(default_factory=list)

    def order_iso_ok(self, top_a: Ord, top_b: Ord) -> bool:
        mapping: dict[Ord, Ord] = {}
        for x, y in self.bp_pairs:
            if mapping.setdefault(x, y) != y:
                return False
        xs = sorted(mapping)
        ys = [mapping[x] for x in xs]
        if any(not ys[i] < ys[i + 1] for i in range(len(ys) - 1)):
            return False
        if mapping.get(ordinal.ZERO) != ordinal.ZERO:
            return False
        if mapping.get(top_a) != top_b:
            return False
        return True

    def partitions(self, top_a: Ord, top_b: Ord) -> tuple[IntervalPartition, IntervalPartition]:
        mapping = dict(self.bp_pairs)
        xs = sorted(mapping)
        ys = [mapping[x] for x in xs]
        return IntervalPartition(tuple(xs)), IntervalPartition(tuple(ys))


class TransferredII(PlayerII):
    """Group-level Player II derived from an order-level Player II."""

    provenance = "Transferred"

    def __init__(self, order_strategy: PlayerII, group_a: DimGroupStructure,
                 group_b: DimGroupStructure):
        self.order_strategy = order_strategy
        self.group_a = group_a
        self.group_b = group_b
        self.order_a = OrdinalOrder(ordinal.succ(group_a.top))
        self.order_b = OrdinalOrder(ordinal.succ(group_b.top))
        self._cache: Optional[tuple[TransferState, tuple]] = None

    # -- state management -----------------------------------------------------

    def _fresh_state(self, initial_clock: Ord) -> TransferState:
        aux_clock = ordinal.mul(ordinal.OMEGA, initial_clock)
        return TransferState(GamePosition(aux_clock), self.order_a, self.order_b)

    def _state_for(self, position: GamePosition) -> TransferState:
        rounds = position.rounds
        state, seen = self._cache if self._cache else (None, ())
        if state is None or len(seen) > len(rounds) or rounds[:len(seen)] != seen:
            state = self._fresh_state(position.initial_clock)
            seen = ()
        for r in rounds[len(seen):]:
            self._feed_round(state, r.clock, r.side, r.probe)
        self._cache = (state, rounds)
        return state

    # -- auxiliary match ------------------------------------------------------

    def _feed_round(self, state: TransferState, group_clock: Ord, side: Side, g: StepFunction):
        breakpoints = g.canonical().partition.breakpoints
        m = len(breakpoints) - 1
        base = ordinal.mul(ordinal.OMEGA, group_clock)
        aux_side = Side.A if side is Side.A else Side.B
        for j, point in enumerate(breakpoints):
            aux_clock = ordinal.add(base, ordinal.fin(m - j))
            if state.aux_clocks and not aux_clock < state.aux_clocks[-1]:
                raise GameError("AUX_CLOCK", "auxiliary clocks failed to decrease")
            move = Move(aux_clock, aux_side, point)
            answer = self.order_strategy.answer(state.aux_position, move, self.order_a, self.order_b)
            other = self.order_b if aux_side is Side.A else self.order_a
            if answer not in other:
                raise GameError("ORDER_STRATEGY_FORFEIT",
                                f"order strategy answered outside the order at aux clock {aux_clock}")
            state.aux_position = state.aux_position.with_round(Round(aux_clock, aux_side, point, answer))
            state.aux_clocks.append(aux_clock)
            pair = (point, answer) if aux_side is Side.A else (answer, point)
            state.bp_pairs.append(pair)
        if not state.order_iso_ok(self.group_a.top, self.group_b.top):
            if getattr(self.order_strategy, "provenance", "") == "KarpFamily":
                # heuristic losses are findings, not silent noise
                findings.record("karp.transfer", "order answers failed to form a "
                                "partition isomorphism",
                                pairs=[(str(x), str(y)) for x, y in state.bp_pairs])
            raise GameError("ORDER_STRATEGY_FORFEIT",
                            "order answers do not form a partition isomorphism")

    # -- the group answer -------------------------------------------------------

    def answer(self, position: GamePosition, move: Move, a, b) -> StepFunction:
        state = self._state_for(position)
        self._feed_round(state, move.clock, move.side, move.element)
        part_a, part_b = state.partitions(self.group_a.top, self.group_b.top)
        iota = partition_iso(part_a, part_b)
        h = iota(move.element) if move.side is Side.A else iota.inverse()(move.element)
        done = Round(move.clock, move.side, move.element, h)
        self._cache = (state, position.rounds + (done,))
        return h

    def aux_transcript(self, position: Optional[GamePosition] = None) -> dict:
        if position is None:
            if self._cache is None:
                raise GameError("NO_MATCH", "no auxiliary match has been played")
            state = self._cache[0]
        else:
            state = self._state_for(position)
        rounds = []
        for r in state.aux_position.rounds:
            rounds.append({
                "clock": ordinal.format_ord(r.clock),
                "side": r.side.value,
                "move": ordinal.format_ord(r.probe),
                "answer": ordinal.format_ord(r.answer),
            })
        return {
            "initial_clock": ordinal.format_ord(state.aux_position.initial_clock),
            "rounds": rounds,
        }


def transfer_strategy(order_strategy: PlayerII, group_a: DimGroupStructure,
                      group_b: DimGroupStructure) -> TransferredII:
    return TransferredII(order_strategy, group_a, group_b)


def demo_pipeline(eps_a: int, eps_b: int, order_strategy: Optional[PlayerII] = None,
                  rounds: int = 3, seed: int = 0) -> dict:
    """Play the group game on the step-function groups over the spaces
    e_a + 1 and e_b + 1 against a seeded random Player I, answering through
    the transferred order strategy; returns the combined transcript."""
    if eps_a > eps_b:
        raise ValueError("expected eps_a <= eps_b")
    top_a, top_b = ordinal.eps(eps_a), ordinal.eps(eps_b)
    group_a, group_b = DimGroupStructure(top_a), DimGroupStructure(top_b)
    if order_strategy is None:
        order_strategy = IdentityII() if eps_a == eps_b else CNFBlockII()
    strat_ii = transfer_strategy(order_strategy, group_a, group_b)
    result = play_match(group_a, group_b, ordinal.fin(rounds), RandomI(seed), strat_ii)
    data = transcript_json(result, group_a, group_b)
    try:
        data["auxiliary"] = strat_ii.aux_transcript(result.position)
    except GameError:
        data["auxiliary"] = {"error": "auxiliary match incomplete"}
    data["order_strategy"] = order_strategy.provenance
    return data

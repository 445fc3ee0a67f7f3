"""Clocked back-and-forth game state machine.

Player I lowers the ordinal clock and probes an element on either side;
Player II answers on the opposite side.  The game is over exactly when the
clock value is 0, and the answered rounds then decide the winner through
the structures' generated-substructure isomorphism check.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Optional

from ordarena import ordinal
from ordarena.efgame.structures import Structure
from ordarena.ordinal import Ord


class Side(enum.Enum):
    A = "A"
    B = "B"

    def other(self) -> "Side":
        return Side.B if self is Side.A else Side.A


class Verdict(enum.Enum):
    II_WINS = "II_WINS"
    I_WINS = "I_WINS"


class GameError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class Move:
    clock: Ord
    side: Side
    element: Any


@dataclass(frozen=True)
class Round:
    clock: Ord
    side: Side
    probe: Any
    answer: Any

    def pair(self) -> tuple[Any, Any]:
        return (self.probe, self.answer) if self.side is Side.A else (self.answer, self.probe)


@dataclass(frozen=True)
class GamePosition:
    initial_clock: Ord
    rounds: tuple[Round, ...] = ()

    @property
    def clock(self) -> Ord:
        return self.rounds[-1].clock if self.rounds else self.initial_clock

    @property
    def is_over(self) -> bool:
        return self.clock == ordinal.ZERO

    def pairs(self) -> tuple[tuple[Any, Any], ...]:
        return tuple(r.pair() for r in self.rounds)

    def with_round(self, r: Round) -> "GamePosition":
        return GamePosition(self.initial_clock, self.rounds + (r,))


@dataclass(frozen=True)
class PendingRound:
    """A validated Player I move, awaiting Player II's answer."""

    position: GamePosition
    move: Move

    def complete(self, answer: Any, a: Structure, b: Structure) -> GamePosition:
        opposite = b if self.move.side is Side.A else a
        if answer not in opposite:
            raise GameError("ELEMENT_NOT_IN_STRUCTURE",
                            f"answer does not belong to side {self.move.side.other().value}")
        return self.position.with_round(
            Round(self.move.clock, self.move.side, self.move.element, answer))


def efd_step(position: GamePosition, move: Move, a: Structure, b: Structure) -> PendingRound:
    if position.is_over:
        raise GameError("GAME_OVER", "the clock already reached 0")
    if not move.clock < position.clock:
        raise GameError("CLOCK_NOT_DECREASING",
                        f"new clock {move.clock} must be strictly below {position.clock}")
    structure = a if move.side is Side.A else b
    if move.element not in structure:
        raise GameError("ELEMENT_NOT_IN_STRUCTURE",
                        f"probe does not belong to side {move.side.value}")
    return PendingRound(position, move)


def check_win(position: GamePosition, a: Structure, b: Structure) -> Verdict:
    if not position.is_over:
        raise GameError("GAME_NOT_OVER", "the clock has not reached 0")
    return Verdict.II_WINS if a.partial_iso_holds(b, position.pairs()) else Verdict.I_WINS


# -- strategies ---------------------------------------------------------------


class PlayerII:
    """Deterministic answer function with a provenance tag."""

    provenance = "Human"

    def answer(self, position: GamePosition, move: Move, a: Structure, b: Structure) -> Any:
        raise NotImplementedError


class PlayerI:
    provenance = "Human"

    def move(self, position: GamePosition, a: Structure, b: Structure) -> Move:
        raise NotImplementedError


@dataclass
class Forfeit:
    by: str                     # "I" or "II"
    round_index: int
    reason: str


@dataclass
class MatchResult:
    position: GamePosition
    verdict: Optional[Verdict]
    forfeit: Optional[Forfeit] = None
    extras: dict = field(default_factory=dict)

    @property
    def winner(self) -> str:
        if self.forfeit is not None:
            return "II" if self.forfeit.by == "I" else "I"
        return "II" if self.verdict is Verdict.II_WINS else "I"


def play_match(a: Structure, b: Structure, clock: Ord, strat_i: PlayerI,
               strat_ii: PlayerII, max_rounds: int = 500) -> MatchResult:
    position = GamePosition(clock)
    while not position.is_over:
        if len(position.rounds) >= max_rounds:
            raise GameError("MAX_ROUNDS", f"match exceeded {max_rounds} rounds")
        idx = len(position.rounds)
        try:
            mv = strat_i.move(position, a, b)
            pending = efd_step(position, mv, a, b)
        except GameError as exc:
            return MatchResult(position, None, Forfeit("I", idx, f"{exc.code}: {exc}"))
        try:
            answer = strat_ii.answer(position, mv, a, b)
            position = pending.complete(answer, a, b)
        except GameError as exc:
            return MatchResult(position, None, Forfeit("II", idx, f"{exc.code}: {exc}"))
    return MatchResult(position, check_win(position, a, b))


def transcript_json(result: MatchResult, a: Structure, b: Structure) -> dict:
    rounds = []
    for r in result.position.rounds:
        probe_side = a if r.side is Side.A else b
        answer_side = b if r.side is Side.A else a
        rounds.append({
            "clock": ordinal.format_ord(r.clock),
            "side": r.side.value,
            "move": probe_side.element_to_json(r.probe),
            "answer": answer_side.element_to_json(r.answer),
        })
    verdict = result.verdict.value if result.verdict else f"FORFEIT_{result.forfeit.by}"
    out = {
        "initial_clock": ordinal.format_ord(result.position.initial_clock),
        "rounds": rounds,
        "verdict": verdict,
    }
    if result.forfeit:
        out["forfeit"] = {
            "by": result.forfeit.by,
            "round": result.forfeit.round_index,
            "reason": result.forfeit.reason,
        }
    if result.extras:
        out.update(result.extras)
    return out

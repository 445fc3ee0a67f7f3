from ordarena.efgame.game import (
    GameError,
    GamePosition,
    Move,
    MatchResult,
    PendingRound,
    PlayerI,
    PlayerII,
    Round,
    Side,
    Verdict,
    check_win,
    efd_step,
    play_match,
    transcript_json,
)
from ordarena.efgame.solver import (
    BruteForceSolver,
    EquivContext,
    EquivResult,
    IntervalI,
    IntervalII,
    SolverCapError,
    decide_equiv_finite_clock,
    probe_points,
)
from ordarena.efgame.structures import DimGroupStructure, FiniteOrder, OrdinalOrder, Structure
from ordarena.efgame.strategies import (
    CNFBlockII,
    GreedyI,
    IdentityII,
    RandomI,
    RandomII,
    exhaustive_ii_check,
)

__all__ = [
    "GameError", "GamePosition", "Move", "MatchResult", "PendingRound", "PlayerI",
    "PlayerII", "Round", "Side", "Verdict", "check_win", "efd_step", "play_match",
    "transcript_json", "BruteForceSolver", "EquivContext", "EquivResult", "IntervalI",
    "IntervalII", "SolverCapError", "decide_equiv_finite_clock", "probe_points",
    "DimGroupStructure", "FiniteOrder", "OrdinalOrder", "Structure", "CNFBlockII",
    "GreedyI", "IdentityII", "RandomI", "RandomII", "exhaustive_ii_check",
]
